#pragma once

#include "spreadfft/types.hpp"

namespace spreadfft {

/// log Gamma(z) via the Lanczos approximation (g = 7, nine terms), with the
/// reflection formula for Re z < 1/2. The imaginary part is the continuous
/// continuation from the positive real axis on Re z >= 1/2; in the reflected
/// half-plane it is determined only modulo 2 pi. Throws PoleError at
/// non-positive integers.
cplx complex_log_gamma(cplx z);

/// Frequency point u_real + i eps on the damped integration contour.
struct DampedArgument {
  Vec2 u_real{0.0, 0.0};
  Vec2 eps{-3.0, 1.0};
};

/// eps_2 > 0 and eps_1 + eps_2 < -1.
bool damping_valid(const Vec2& eps);

/// eps_2 below this still prices but loses accuracy on practical grids.
inline constexpr double kSoftDampingThreshold = 0.2;

/// Fourier transform of the unit-strike spread payoff (e^{x1} - e^{x2} - 1)_+
/// at u = u_real + i eps:
///   Gamma(i(u1 + u2) - 1) Gamma(-i u2) / Gamma(i u1 + 1),
/// evaluated in the log domain. Throws DampingViolationError when eps is
/// outside the admissible region.
cplx spread_payoff_hat(const DampedArgument& arg);

/// Same transform at an arbitrary complex point, without the damping check.
cplx spread_payoff_hat(const CVec2& u);

}  // namespace spreadfft
