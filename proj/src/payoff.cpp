#include "spreadfft/payoff.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spreadfft/cmath_ext.hpp"
#include "spreadfft/errors.hpp"

namespace spreadfft {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);
const double kLogPi = std::log(std::numbers::pi);

cplx lanczos_log_gamma(cplx z) {
  z -= 1.0;
  cplx series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) series += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(series);
}

// log sin(pi z), evaluated without overflow for large |Im z|.
cplx log_sin_pi(cplx z) {
  const cplx w = std::numbers::pi * z;
  if (std::abs(w.imag()) < 20.0) return std::log(std::sin(w));
  constexpr cplx I{0.0, 1.0};
  if (w.imag() > 0.0) {
    // sin w = e^{-iw} (1 - e^{2iw}) i / 2
    return -I * w + std::log(cplx(0.0, 0.5)) + detail::log1p(-std::exp(2.0 * I * w));
  }
  return std::conj(log_sin_pi(std::conj(z)));
}

}  // namespace

cplx complex_log_gamma(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && std::floor(z.real()) == z.real()) {
    std::ostringstream os;
    os << "Gamma has a pole at z = " << z.real();
    throw PoleError(os.str());
  }
  if (z.real() < 0.5) {
    return kLogPi - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
  }
  return lanczos_log_gamma(z);
}

bool damping_valid(const Vec2& eps) { return eps[1] > 0.0 && eps[0] + eps[1] < -1.0; }

cplx spread_payoff_hat(const CVec2& u) {
  constexpr cplx I{0.0, 1.0};
  const cplx log_value = complex_log_gamma(I * (u[0] + u[1]) - 1.0) + complex_log_gamma(-I * u[1]) -
                         complex_log_gamma(I * u[0] + 1.0);
  return std::exp(log_value);
}

cplx spread_payoff_hat(const DampedArgument& arg) {
  if (!damping_valid(arg.eps)) {
    std::ostringstream os;
    os << "damping (" << arg.eps[0] << ", " << arg.eps[1]
       << ") outside region eps2 > 0, eps1 + eps2 < -1";
    throw DampingViolationError(os.str());
  }
  const CVec2 u{cplx(arg.u_real[0], arg.eps[0]), cplx(arg.u_real[1], arg.eps[1])};
  return spread_payoff_hat(u);
}

}  // namespace spreadfft
