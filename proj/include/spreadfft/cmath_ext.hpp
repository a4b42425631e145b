#pragma once

#include <cmath>

#include "spreadfft/types.hpp"

// Complex elementary functions missing from <complex>, accurate near zero.
namespace spreadfft::detail {

/// exp(z) - 1
inline cplx expm1(cplx z) {
  const double a = z.real();
  const double b = z.imag();
  const double s = std::sin(0.5 * b);
  return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

/// log(1 + z), principal branch.
inline cplx log1p(cplx z) {
  const double x = z.real();
  const double y = z.imag();
  return {0.5 * std::log1p(2.0 * x + x * x + y * y), std::atan2(y, 1.0 + x)};
}

/// (1 - exp(-z)) / z, continuous at z = 0.
inline cplx one_minus_exp_over(cplx z) {
  if (std::abs(z) < 1e-4) return 1.0 - z * (0.5 - z * (1.0 / 6.0 - z / 24.0));
  return -expm1(-z) / z;
}

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace spreadfft::detail
