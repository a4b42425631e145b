#include "spreadfft/errors.hpp"

namespace spreadfft {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::degenerate_denominator: return "DegenerateDenominator";
    case ErrorCode::non_finite: return "NonFinite";
    case ErrorCode::pole: return "Pole";
    case ErrorCode::damping_violation: return "DampingViolation";
    case ErrorCode::no_feasible_step: return "NoFeasibleStep";
    case ErrorCode::negative_price: return "NegativePrice";
    case ErrorCode::imaginary_residue: return "ImaginaryResidue";
    case ErrorCode::not_psd: return "NotPsd";
    case ErrorCode::parse: return "ParseError";
    case ErrorCode::validation: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace spreadfft
