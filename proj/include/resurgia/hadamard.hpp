#pragma once

#include <functional>
#include <vector>

#include "resurgia/quad.hpp"
#include "resurgia/series.hpp"

namespace resurgia {
namespace series {

// A function analytic at 0 given by an evaluator plus enough metadata to
// place contours: radius of analyticity about 0 (0 = entire) and optionally
// the singular points themselves.
template <class Real>
struct AnalyticHandle {
  std::function<Complex<Real>(const Complex<Real>&)> eval;
  Real radius = Real(0);
  std::vector<Complex<Real>> singularities;
};

// (A (*) B)(p) = (1/2 pi i) oint_{|s|=r} A(s) B(p/s) ds/s, the contour form
// of the Hadamard product. Preconditions: A analytic on |s| <= r, B analytic
// on |w| <= |p|/r.
template <class Real>
Complex<Real> hadamard_integral(const AnalyticHandle<Real>& A, const AnalyticHandle<Real>& B,
                                const Complex<Real>& p, const Real& r, const Real& tol) {
  if (A.radius > 0 && !(r < A.radius))
    fail(ErrorCode::invalid_argument, "hadamard_integral: contour radius outside A's disk");
  if (B.radius > 0 && !(abs(p) / r < B.radius))
    fail(ErrorCode::invalid_argument,
         "hadamard_integral: |p|/r outside B's disk of analyticity");
  for (const auto& s : A.singularities)
    if (abs(abs(s) - r) < Real(1) / 1000000)
      fail(ErrorCode::domain, "hadamard_integral: contour passes within 1e-6 of a singularity of A");
  for (const auto& s : B.singularities) {
    if (s == Complex<Real>()) continue;
    Real ring = abs(p) / abs(s);  // B(p/s) singular where |s| = |p|/|s_B|
    if (abs(ring - r) < Real(1) / 1000000)
      fail(ErrorCode::domain, "hadamard_integral: contour passes within 1e-6 of a singularity of B(p/.)");
  }
  auto g = [&](const Complex<Real>& s) { return A.eval(s) * B.eval(p / s) / s; };
  Complex<Real> loop = quad::circle_integral(g, Complex<Real>(), r, tol);
  return loop / (2 * pi_v<Real>() * Complex<Real>::i());
}

}  // namespace series
}  // namespace resurgia
