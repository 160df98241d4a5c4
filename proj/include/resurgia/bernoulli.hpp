#pragma once

#include <mutex>
#include <vector>

#include "resurgia/rational.hpp"

namespace resurgia {

namespace detail {

// Extends the shared cache so it holds B_0..B_{n}. Exact convolution
// recurrence sum_{j=0}^{n} C(n+1, j) B_j = 0; never floating point.
inline void extend_bernoulli(std::vector<BigRational>& b, size_t n) {
  if (b.empty()) {
    b.emplace_back(1);                 // B_0
    b.emplace_back(BigRational(-1, 2));  // B_1
  }
  while (b.size() <= n) {
    size_t m = b.size();
    if (m % 2 == 1 && m > 1) {
      b.emplace_back(0);  // odd Bernoulli numbers vanish beyond B_1
      continue;
    }
    BigRational acc = 0;
    for (size_t j = 0; j < m; ++j) {
      if (b[j] == 0) continue;
      acc += BigRational(binomial_big(static_cast<unsigned>(m + 1),
                                      static_cast<unsigned>(j))) * b[j];
    }
    b.emplace_back(-acc / BigRational(BigInt(m + 1)));
  }
}

}  // namespace detail

// B_n, exact.
inline BigRational bernoulli(unsigned n) {
  static std::vector<BigRational> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  detail::extend_bernoulli(cache, n);
  return cache[n];
}

// B_0..B_{M-1}.
inline std::vector<BigRational> bernoulli_numbers(size_t M) {
  if (M == 0) fail(ErrorCode::invalid_argument, "bernoulli_numbers needs M >= 1");
  std::vector<BigRational> out(M);
  for (size_t n = 0; n < M; ++n) out[n] = bernoulli(static_cast<unsigned>(n));
  return out;
}

}  // namespace resurgia
