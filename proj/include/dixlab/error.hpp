#pragma once

#include <stdexcept>
#include <string>

namespace dixlab {

enum class ErrorCode {
  invalid_argument,
  parse_error,
  insufficient_prefix,
  insufficient_blocks,
  tail_bound_failure,
  growth_bound_violated,
  inconsistent_estimates,
  abscissa_violation,
  unsupported_dimension,
  non_symmetric,
  io_error,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::insufficient_prefix: return "insufficient-prefix";
    case ErrorCode::insufficient_blocks: return "insufficient-blocks";
    case ErrorCode::tail_bound_failure: return "tail-bound-failure";
    case ErrorCode::growth_bound_violated: return "growth-bound-violated";
    case ErrorCode::inconsistent_estimates: return "inconsistent-estimates";
    case ErrorCode::abscissa_violation: return "abscissa-violation";
    case ErrorCode::unsupported_dimension: return "unsupported-dimension";
    case ErrorCode::non_symmetric: return "non-symmetric";
    case ErrorCode::io_error: return "io-error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// parse errors carry the character offset into the spec string
class ParseError : public Error {
 public:
  ParseError(const std::string& input, std::size_t pos, const std::string& msg)
      : Error(ErrorCode::parse_error,
              msg + " at position " + std::to_string(pos) + " in '" + input + "'"),
        pos_(pos) {}
  std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

}  // namespace dixlab
