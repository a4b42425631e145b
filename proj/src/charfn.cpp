#include "spreadfft/charfn.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

#include "spreadfft/cmath_ext.hpp"
#include "spreadfft/errors.hpp"

namespace spreadfft {

namespace {

constexpr cplx I{0.0, 1.0};

std::string describe(const CVec2& u) {
  std::ostringstream os;
  os.precision(10);
  os << "u = (" << u[0] << ", " << u[1] << ")";
  return os.str();
}

RiccatiCoeffs finish(cplx zeta, cplx omega, double vol_of_vol) {
  const cplx gamma = std::sqrt(omega * omega - 2.0 * vol_of_vol * vol_of_vol * zeta);
  return {zeta, omega, gamma};
}

cplx checked(cplx value, const CVec2& u, const char* what) {
  if (!detail::is_finite(value)) {
    throw NonFiniteError(std::string("non-finite ") + what + " at " + describe(u));
  }
  return value;
}

}  // namespace

cplx jump_cf(const CVec2& u, double tau, const JumpParams& jumps) {
  if (jumps.lambda == 0.0 || tau == 0.0) return 1.0;
  const auto& c = jumps.jump_cov;
  const cplx quad = u[0] * c[0][0] * u[0] + 2.0 * u[0] * c[0][1] * u[1] + u[1] * c[1][1] * u[1];
  const cplx mean = u[0] * jumps.k_bar[0] + u[1] * jumps.k_bar[1];
  return std::exp(tau * jumps.lambda * detail::expm1(I * mean - 0.5 * quad));
}

RiccatiCoeffs riccati_coeffs_proportional(const CVec2& u, const ProportionalVolModel& model,
                                          RiccatiForm form) {
  const auto& s = model.sigma;
  const double theta = model.cir.vol_of_vol;
  const cplx linear = I * (s[0] * s[0] * u[0] + s[1] * s[1] * u[1]);
  const cplx quadratic = s[0] * s[0] * u[0] * u[0] + s[1] * s[1] * u[1] * u[1] +
                         2.0 * model.rho_ss * s[0] * s[1] * u[0] * u[1];
  const cplx zeta = -0.5 * (linear + quadratic);
  cplx coupling;
  if (form == RiccatiForm::derived) {
    coupling = model.rho_sv[0] * s[0] * u[0] + model.rho_sv[1] * s[1] * u[1];
  } else {
    coupling = model.rho_sv[0] * u[0] + model.rho_sv[1] * u[1];
  }
  return finish(zeta, model.cir.kappa - I * theta * coupling, theta);
}

RiccatiCoeffs riccati_coeffs_independent(cplx u_m, int asset_index, const IndependentVolModel& model,
                                         RiccatiForm form) {
  const double sigma = model.sigma.at(asset_index);
  const CirParams& cir = model.cir.at(asset_index);
  const double theta = cir.vol_of_vol;
  cplx zeta;
  if (form == RiccatiForm::derived) {
    zeta = -0.5 * sigma * sigma * (I * u_m + u_m * u_m);
  } else {
    zeta = -0.5 * theta * theta * (I * u_m * sigma + u_m * u_m * sigma * sigma);
  }
  const cplx omega = cir.kappa - I * theta * sigma * model.rho_sv[asset_index] * u_m;
  return finish(zeta, omega, theta);
}

cplx tracked_log_ratio(cplx a, cplx gamma, double s) {
  // q(t) = (1 - a) + a exp(-gamma t) stays inside the disk centred at 1 - a
  // with radius |a| because Re gamma >= 0.
  const cplx centre = 1.0 - a;
  const double radius = std::abs(a);
  if (centre.real() > radius) {
    return detail::log1p(a * detail::expm1(-gamma * s));
  }
  if (radius < std::abs(centre)) {
    const cplx log_centre = detail::log1p(-a);
    const cplx value = log_centre + detail::log1p(a * std::exp(-gamma * s) / centre);
    const cplx at_zero = log_centre + detail::log1p(a / centre);
    const double turns = std::round(at_zero.imag() / (2.0 * std::numbers::pi));
    return value - cplx(0.0, 2.0 * std::numbers::pi * turns);
  }
  // The path may wind around the origin: follow the argument in small steps.
  const double sweep = std::abs(gamma) * s;
  const int steps = static_cast<int>(std::clamp(std::ceil(8.0 * sweep / std::numbers::pi), 16.0, 1e6));
  double arg = 0.0;
  cplx prev = 1.0;
  for (int k = 1; k <= steps; ++k) {
    const double t = s * static_cast<double>(k) / steps;
    const cplx cur = centre + a * std::exp(-gamma * t);
    arg += std::arg(cur / prev);
    prev = cur;
  }
  return {std::log(std::abs(prev)), arg};
}

CdValue cd_functions(const RiccatiCoeffs& coeffs, const CirParams& cir, cplx drift_term, double s) {
  if (s == 0.0) return {0.0, 0.0};
  const auto& [zeta, omega, gamma] = coeffs;
  const double theta2 = cir.vol_of_vol * cir.vol_of_vol;

  // g = (gamma - omega) / theta^2, written so that it survives theta -> 0.
  cplx g = 0.0;
  if (zeta != 0.0) {
    const cplx sum = gamma + omega;
    if (std::abs(sum) > 1e-300) {
      g = -2.0 * zeta / sum;
    } else if (theta2 > 0.0) {
      g = (gamma - omega) / theta2;
    }
  }
  // h = (1 - exp(-gamma s)) / gamma
  const cplx h = s * detail::one_minus_exp_over(gamma * s);
  const cplx q = -0.5 * theta2 * g * h;
  const cplx denom = 1.0 + q;
  if (std::abs(denom) < 1e-300) {
    throw DegenerateDenominatorError("D(s) denominator vanishes");
  }
  const cplx d = zeta * h / denom;

  cplx log_ratio_over_q = 1.0;
  if (q != 0.0) {
    cplx log_ratio;
    if (theta2 == 0.0 || std::abs(gamma) * s < 1e-8) {
      log_ratio = detail::log1p(q);
    } else {
      log_ratio = tracked_log_ratio(0.5 * theta2 * g / gamma, gamma, s);
    }
    log_ratio_over_q = log_ratio / q;
  }
  const cplx c = drift_term * s + cir.kappa * cir.v_bar * g * (h * log_ratio_over_q - s);
  return {c, d};
}

CfValue cf_proportional(const CVec2& u, double tau, const ProportionalVolModel& model,
                        const MarketState& state, RiccatiForm form) {
  const RiccatiCoeffs coeffs = riccati_coeffs_proportional(u, model, form);
  const auto& k = model.jumps.k_bar;
  const double lambda = model.jumps.lambda;
  const cplx drift = I * (u[0] * (state.r - lambda * k[0]) + u[1] * (state.r - lambda * k[1]));
  const CdValue cd = cd_functions(coeffs, model.cir, drift, tau);
  const cplx jump = jump_cf(u, tau, model.jumps);
  CfValue out{};
  out.log_c = cd.c;
  out.log_d = {cd.d, 0.0};
  out.jump_factor = jump;
  out.value = checked(std::exp(cd.c + model.cir.v0 * cd.d) * jump, u, "characteristic function");
  return out;
}

CfValue cf_independent(const CVec2& u, double tau, const IndependentVolModel& model,
                       const MarketState& state, RiccatiForm form) {
  CfValue out{};
  cplx exponent = 0.0;
  for (int m = 0; m < 2; ++m) {
    const RiccatiCoeffs coeffs = riccati_coeffs_independent(u[m], m, model, form);
    const cplx drift = I * u[m] * (state.r - model.jumps.lambda * model.jumps.k_bar[m]);
    const CdValue cd = cd_functions(coeffs, model.cir[m], drift, tau);
    out.log_c += cd.c;
    out.log_d[m] = cd.d;
    exponent += cd.c + model.cir[m].v0 * cd.d;
  }
  out.jump_factor = jump_cf(u, tau, model.jumps);
  out.value = checked(std::exp(exponent) * out.jump_factor, u, "characteristic function");
  return out;
}

CfValue cf(const CVec2& u, double tau, const Model& model, const MarketState& state, RiccatiForm form) {
  return std::visit(
      [&](const auto& m) -> CfValue {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ProportionalVolModel>) {
          return cf_proportional(u, tau, m, state, form);
        } else {
          return cf_independent(u, tau, m, state, form);
        }
      },
      model);
}

}  // namespace spreadfft
