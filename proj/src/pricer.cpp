#include "spreadfft/pricer.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spreadfft/cmath_ext.hpp"
#include "spreadfft/errors.hpp"
#include "spreadfft/parallel.hpp"
#include "spreadfft/payoff.hpp"

namespace spreadfft {

namespace {

constexpr double kPi = std::numbers::pi;

void require_valid(const ValidationReport& report) {
  if (report.ok()) return;
  std::string msg = "invalid input:";
  for (const auto& v : report.violations) msg += " " + v + ";";
  throw ValidationError(msg);
}

}  // namespace

void validate(const FftGridConfig& cfg) {
  std::string msg;
  if (cfg.n < 64 || cfg.n > 4096 || !is_power_of_two(static_cast<std::size_t>(cfg.n))) {
    msg += " fft.n must be a power of two in [64, 4096];";
  }
  if (!(cfg.u_min > 0.0)) msg += " fft.u_min must be > 0;";
  if (cfg.sign != 1 && cfg.sign != -1) msg += " fft.sign must be +1 or -1;";
  if (!msg.empty()) throw ValidationError("invalid fft config:" + msg);
  if (!damping_valid(cfg.eps)) {
    std::ostringstream os;
    os << "damping region: eps = (" << cfg.eps[0] << ", " << cfg.eps[1]
       << ") violates eps2 > 0, eps1 + eps2 < -1";
    throw DampingViolationError(os.str());
  }
}

StepSelection select_step(int n, double x0, double u_min) {
  if (n < 4 || n % 2 != 0) throw ValidationError("select_step: n must be even and >= 4");
  if (!(u_min > 0.0)) throw ValidationError("select_step: u_min must be > 0");
  const int half = n / 2;
  if (std::abs(x0) < 1e-14) {
    return {2.0 * u_min / n, half, u_min};
  }
  // Ascending search over j away from the centre; u_bar grows with |j - n/2|.
  const int dir = x0 > 0.0 ? 1 : -1;
  for (int j = half + dir; j >= 0 && j < n; j += dir) {
    const double u_bar = kPi * (j - half) / x0;
    if (u_bar >= u_min * (1.0 - 1e-12)) return {2.0 * u_bar / n, j, u_bar};
  }
  std::ostringstream os;
  os << "no lattice index in [0, " << n - 1 << "] places x0 = " << x0 << " with u_bar >= " << u_min;
  throw NoFeasibleStepError(os.str());
}

FftGrid build_grid(const FftGridConfig& cfg, const MarketState& state, const SpreadContract& contract) {
  if (!(contract.strike > 0.0)) throw ValidationError("contract.K must be > 0");
  FftGrid g;
  g.n = cfg.n;
  for (int m = 0; m < 2; ++m) {
    g.x0[m] = std::log(state.s0[m] / contract.strike);
    const StepSelection sel = select_step(cfg.n, g.x0[m], cfg.u_min);
    g.du[m] = sel.du;
    g.target_index[m] = sel.target_index;
    g.u_bar[m] = 0.5 * cfg.n * sel.du;
    g.dx[m] = 2.0 * kPi / (cfg.n * sel.du);
    g.x_bar[m] = 0.5 * cfg.n * g.dx[m];
  }
  return g;
}

ComplexMatrix assemble_g(const FftGrid& grid, const Vec2& eps, const CfEvaluator& cf,
                         const PayoffEvaluator& payoff, unsigned threads) {
  const auto n = static_cast<std::size_t>(grid.n);
  ComplexMatrix g(n);
  parallel_for(n, threads, [&](std::size_t k1) {
    cplx* row = g.row(k1);
    for (std::size_t k2 = 0; k2 < n; ++k2) {
      const CVec2 u{cplx(grid.u(0, static_cast<int>(k1)), eps[0]), cplx(grid.u(1, static_cast<int>(k2)), eps[1])};
      cplx value;
      try {
        value = cf(u) * payoff(u);
      } catch (const NonFiniteError& e) {
        std::ostringstream os;
        os << e.what() << " (grid point k = (" << k1 << ", " << k2 << "))";
        throw NonFiniteError(os.str());
      }
      if (!detail::is_finite(value)) {
        std::ostringstream os;
        os << "non-finite integrand at grid point k = (" << k1 << ", " << k2 << ")";
        throw NonFiniteError(os.str());
      }
      row[k2] = ((k1 + k2) & 1U) ? -value : value;
    }
  });
  return g;
}

PriceResult price_spread_fft(const Model& model, const MarketState& state, const SpreadContract& contract,
                             const FftGridConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  require_valid(validate(model));
  require_valid(validate(state));
  require_valid(validate(contract));
  validate(cfg);

  PriceResult result;
  result.grid = build_grid(cfg, state, contract);
  const FftGrid& grid = result.grid;
  if (cfg.eps[1] < kSoftDampingThreshold) {
    result.warnings.push_back("eps2 below 0.2: damping close to the pole of Gamma(-i u2)");
  }
  if (cfg.eps[0] + cfg.eps[1] > -1.2) {
    result.warnings.push_back("eps1 + eps2 above -1.2: slow payoff decay, the x lattice may alias");
  }
  if (2.0 * grid.x_bar[0] < 20.0 || 2.0 * grid.x_bar[1] < 20.0) {
    result.warnings.push_back("log-price lattice narrower than 20: coarse frequency step");
  }

  const double tau = contract.maturity;
  const CfEvaluator char_fn = [&](const CVec2& u) { return cf(u, tau, model, state, cfg.form).value; };
  const PayoffEvaluator payoff = [](const CVec2& u) { return spread_payoff_hat(u); };
  const ComplexMatrix g = assemble_g(grid, cfg.eps, char_fn, payoff, cfg.threads);
  const ComplexMatrix f = inverse_dft2(g, cfg.sign, cfg.threads);
  result.cf_evals = static_cast<std::size_t>(grid.n) * static_cast<std::size_t>(grid.n);

  const auto [l1, l2] = grid.target_index;
  const double parity = ((l1 + l2) & 1) ? -1.0 : 1.0;
  const double n = grid.n;
  const double prefactor = std::exp(-state.r * tau) * grid.du[0] * grid.du[1] * n * n / (4.0 * kPi * kPi) *
                           std::exp(-(cfg.eps[0] * grid.x0[0] + cfg.eps[1] * grid.x0[1]));
  const cplx value = contract.strike * parity * prefactor * f(static_cast<std::size_t>(l1), static_cast<std::size_t>(l2));
  if (!detail::is_finite(value)) throw NonFiniteError("non-finite price");

  result.price = value.real();
  result.imag_residue = value.imag();
  if (std::abs(value.imag()) > 1e-6 * std::max(std::abs(value.real()), 1.0)) {
    std::ostringstream os;
    os << "imaginary residue " << value.imag() << " exceeds 1e-6 of price " << value.real();
    throw ImaginaryResidueError(os.str());
  }
  if (result.price < -1e-6) {
    std::ostringstream os;
    os << "negative price " << result.price;
    throw NegativePriceError(os.str());
  }
  result.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace spreadfft
