#pragma once

#include <stdexcept>
#include <string>

namespace resurgia {

// Machine-readable error codes, stable across the library and the CLI.
enum class ErrorCode {
  syntax,           // malformed expression text
  unknown_ident,    // identifier not in the grammar
  domain,           // evaluation at a singularity / branch cut / invalid point
  overflow,         // non-finite intermediate detected
  unsupported,      // outside the supported function class
  hypothesis,       // a required hypothesis check failed
  divergent,        // integral/series provably divergent for the parameters
  tolerance,        // tolerance not achieved within resource caps
  invalid_argument  // bad call-level argument (order, tag mismatch, ...)
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::syntax: return "syntax";
    case ErrorCode::unknown_ident: return "unknown_ident";
    case ErrorCode::domain: return "domain";
    case ErrorCode::overflow: return "overflow";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::hypothesis: return "hypothesis";
    case ErrorCode::divergent: return "divergent";
    case ErrorCode::tolerance: return "tolerance";
    case ErrorCode::invalid_argument: return "invalid_argument";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }
  const char* code_name() const { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace resurgia
