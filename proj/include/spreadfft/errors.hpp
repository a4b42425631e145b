#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spreadfft {

enum class ErrorCode {
  degenerate_denominator,
  non_finite,
  pole,
  damping_violation,
  no_feasible_step,
  negative_price,
  imaginary_residue,
  not_psd,
  parse,
  validation,
};

/// Short stable identifier, used in sweep cells as `ERR:<code>`.
std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct DegenerateDenominatorError : Error {
  explicit DegenerateDenominatorError(const std::string& w) : Error(ErrorCode::degenerate_denominator, w) {}
};
struct NonFiniteError : Error {
  explicit NonFiniteError(const std::string& w) : Error(ErrorCode::non_finite, w) {}
};
struct PoleError : Error {
  explicit PoleError(const std::string& w) : Error(ErrorCode::pole, w) {}
};
struct DampingViolationError : Error {
  explicit DampingViolationError(const std::string& w) : Error(ErrorCode::damping_violation, w) {}
};
struct NoFeasibleStepError : Error {
  explicit NoFeasibleStepError(const std::string& w) : Error(ErrorCode::no_feasible_step, w) {}
};
struct NegativePriceError : Error {
  explicit NegativePriceError(const std::string& w) : Error(ErrorCode::negative_price, w) {}
};
struct ImaginaryResidueError : Error {
  explicit ImaginaryResidueError(const std::string& w) : Error(ErrorCode::imaginary_residue, w) {}
};
struct NotPsdError : Error {
  explicit NotPsdError(const std::string& w) : Error(ErrorCode::not_psd, w) {}
};

struct ParseError : Error {
  ParseError(int line, const std::string& w)
      : Error(ErrorCode::parse, "line " + std::to_string(line) + ": " + w), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& w) : Error(ErrorCode::validation, w) {}
};

}  // namespace spreadfft
