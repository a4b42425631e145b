#include "spreadfft/mc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <type_traits>

#include "spreadfft/errors.hpp"
#include "spreadfft/parallel.hpp"
#include "spreadfft/philox.hpp"

namespace spreadfft {

namespace {

constexpr std::size_t kBlock = 2048;

enum Stream : std::uint32_t { kDiffusionA = 0, kDiffusionB = 1, kPoisson = 2, kJumpSize = 3 };

struct BlockTotals {
  std::size_t floored = 0;
  DriverStats drivers;
};

template <typename Lower>
Lower checked_cholesky(const Lower& m, const char* what) {
  Lower out{};
  if (!cholesky_lower(m, out, 1e-12)) throw NotPsdError(std::string(what) + " is not positive semi-definite");
  return out;
}

struct Sampler {
  Philox4x32 rng;
  std::uint32_t lo;
  std::uint32_t hi;

  Philox4x32::Counter block(std::size_t step, Stream stream) const {
    return rng({static_cast<std::uint32_t>(step), stream, lo, hi});
  }
};

int poisson(double uniform, double mean) {
  double p = std::exp(-mean);
  double cdf = p;
  int k = 0;
  while (uniform > cdf && k < 10000) {
    ++k;
    p *= mean / k;
    cdf += p;
    if (p == 0.0) break;
  }
  return k;
}

struct Summary {
  double mean = 0.0;
  double std_error = 0.0;
};

Summary summarize(const std::vector<double>& values) {
  Summary s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / values.size();
  if (values.size() < 2) return s;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.std_error = std::sqrt(ss / (values.size() - 1) / values.size());
  return s;
}

// Collapses antithetic pairs to their averages; the pairs are the i.i.d. samples.
std::vector<double> pair_average(std::vector<double> values, bool antithetic) {
  if (!antithetic) return values;
  std::vector<double> out(values.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (values[2 * i] + values[2 * i + 1]);
  return out;
}

}  // namespace

void validate(const McConfig& cfg) {
  if (cfg.n_paths < 2) throw ValidationError("mc.n_paths must be >= 2");
  if (cfg.n_steps < 1) throw ValidationError("mc.n_steps must be >= 1");
  if (cfg.antithetic && cfg.n_paths % 2 != 0) throw ValidationError("mc.n_paths must be even with antithetic");
}

std::size_t steps_for(const McConfig& cfg, double tau) {
  const double scaled = std::round(static_cast<double>(cfg.n_steps) * tau);
  return std::max<std::size_t>(1, static_cast<std::size_t>(scaled));
}

double TerminalPaths::floored_fraction() const {
  const double total = static_cast<double>(steps) * static_cast<double>(x.size());
  return total > 0.0 ? static_cast<double>(floored_steps) / total : 0.0;
}

Mat2 chol2(const Mat2& corr) { return checked_cholesky(corr, "correlation matrix"); }
Mat3 chol3(const Mat3& corr) { return checked_cholesky(corr, "correlation matrix"); }

TerminalPaths simulate_terminal(const Model& model, const MarketState& state, double tau, const McConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  const ValidationReport report = validate(model);
  if (!report.ok()) throw ValidationError("invalid model: " + report.violations.front());

  const bool proportional = std::holds_alternative<ProportionalVolModel>(model);
  const JumpParams& jumps = std::visit([](const auto& m) -> const JumpParams& { return m.jumps; }, model);
  const Vec2 sigma = std::visit([](const auto& m) { return m.sigma; }, model);
  std::array<CirParams, 2> cir{};
  Vec2 rho_sv{};
  Mat3 lower3{};
  std::array<Mat2, 2> lower_pair{};
  if (proportional) {
    const auto& m = std::get<ProportionalVolModel>(model);
    cir = {m.cir, m.cir};
    lower3 = chol3(m.correlation());
  } else {
    const auto& m = std::get<IndependentVolModel>(model);
    cir = m.cir;
    rho_sv = m.rho_sv;
    for (int a = 0; a < 2; ++a) lower_pair[a] = chol2({{{1.0, rho_sv[a]}, {rho_sv[a], 1.0}}});
  }
  const Mat2 jump_lower = checked_cholesky(jumps.jump_cov, "jump covariance");

  const std::size_t steps = steps_for(cfg, tau);
  const double dt = tau / static_cast<double>(steps);
  const double jump_mean = jumps.lambda * dt;
  const Vec2 drift{(state.r - jumps.lambda * jumps.k_bar[0]) * dt, (state.r - jumps.lambda * jumps.k_bar[1]) * dt};
  const Vec2 x0{std::log(state.s0[0]), std::log(state.s0[1])};

  TerminalPaths out;
  out.x.resize(cfg.n_paths);
  out.v.resize(cfg.n_paths);
  out.steps = steps;
  const std::size_t n_blocks = (cfg.n_paths + kBlock - 1) / kBlock;
  std::vector<BlockTotals> totals(n_blocks);
  const Philox4x32 rng(cfg.seed);

  parallel_for(n_blocks, cfg.threads, [&](std::size_t b) {
    BlockTotals& tot = totals[b];
    const std::size_t end = std::min(cfg.n_paths, (b + 1) * kBlock);
    for (std::size_t path = b * kBlock; path < end; ++path) {
      const std::size_t draw = cfg.antithetic ? path / 2 : path;
      const double sign = (cfg.antithetic && (path & 1U)) ? -1.0 : 1.0;
      const Sampler sampler{rng, static_cast<std::uint32_t>(draw), static_cast<std::uint32_t>(draw >> 32)};
      Vec2 x = x0;
      Vec2 v{cir[0].v0, cir[1].v0};
      for (std::size_t step = 0; step < steps; ++step) {
        const auto [n0, n1] = normal_pair(sampler.block(step, kDiffusionA));
        const auto [n2, n3] = normal_pair(sampler.block(step, kDiffusionB));
        const double a0 = sign * n0, a1 = sign * n1, a2 = sign * n2, a3 = sign * n3;
        double z1, z2;
        if (proportional) {
          const Mat3& L = lower3;
          z1 = L[0][0] * a0;
          z2 = L[1][0] * a0 + L[1][1] * a1;
          const double zv = L[2][0] * a0 + L[2][1] * a1 + L[2][2] * a2;
          const double vp = std::max(v[0], 0.0);
          const double sd = std::sqrt(vp * dt);
          x[0] += drift[0] - 0.5 * sigma[0] * sigma[0] * vp * dt + sigma[0] * sd * z1;
          x[1] += drift[1] - 0.5 * sigma[1] * sigma[1] * vp * dt + sigma[1] * sd * z2;
          v[0] += cir[0].kappa * (cir[0].v_bar - vp) * dt + cir[0].vol_of_vol * sd * zv;
          if (v[0] < 0.0) ++tot.floored;
          v[1] = v[0];
        } else {
          z1 = a0;
          z2 = a2;
          const std::array<double, 2> zs{a0, a2};
          const std::array<double, 2> zv{lower_pair[0][1][0] * a0 + lower_pair[0][1][1] * a1,
                                         lower_pair[1][1][0] * a2 + lower_pair[1][1][1] * a3};
          for (int m = 0; m < 2; ++m) {
            const double vp = std::max(v[m], 0.0);
            const double sd = std::sqrt(vp * dt);
            x[m] += drift[m] - 0.5 * sigma[m] * sigma[m] * vp * dt + sigma[m] * sd * zs[m];
            v[m] += cir[m].kappa * (cir[m].v_bar - vp) * dt + cir[m].vol_of_vol * sd * zv[m];
            if (v[m] < 0.0) ++tot.floored;
          }
        }
        if (cfg.record_drivers) {
          DriverStats& d = tot.drivers;
          d.count += 1.0;
          d.sum_z1 += z1;
          d.sum_z2 += z2;
          d.sum_z1z1 += z1 * z1;
          d.sum_z2z2 += z2 * z2;
          d.sum_z1z2 += z1 * z2;
          d.sum_z1z2_sq += z1 * z2 * z1 * z2;
        }
        if (jump_mean > 0.0) {
          const auto u = sampler.block(step, kPoisson);
          const int count = poisson(to_open_unit(u[0], u[1]), jump_mean);
          if (count > 0) {
            const auto [m0, m1] = normal_pair(sampler.block(step, kJumpSize));
            const double scale = std::sqrt(static_cast<double>(count));
            const double j0 = sign * m0, j1 = sign * m1;
            x[0] += count * jumps.k_bar[0] + scale * jump_lower[0][0] * j0;
            x[1] += count * jumps.k_bar[1] + scale * (jump_lower[1][0] * j0 + jump_lower[1][1] * j1);
          }
        }
      }
      out.x[path] = x;
      out.v[path] = {std::max(v[0], 0.0), std::max(v[1], 0.0)};
    }
  });

  for (const BlockTotals& t : totals) {
    out.floored_steps += t.floored;
    DriverStats& d = out.drivers;
    d.count += t.drivers.count;
    d.sum_z1 += t.drivers.sum_z1;
    d.sum_z2 += t.drivers.sum_z2;
    d.sum_z1z1 += t.drivers.sum_z1z1;
    d.sum_z2z2 += t.drivers.sum_z2z2;
    d.sum_z1z2 += t.drivers.sum_z1z2;
    d.sum_z1z2_sq += t.drivers.sum_z1z2_sq;
  }
  out.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<McResult> price_spread_from_paths(const TerminalPaths& paths, const std::vector<double>& strikes,
                                              double discount, bool antithetic) {
  std::vector<McResult> results;
  results.reserve(strikes.size());
  std::vector<double> payoff(paths.x.size());
  for (double strike : strikes) {
    for (std::size_t i = 0; i < paths.x.size(); ++i) {
      payoff[i] = discount * std::max(std::exp(paths.x[i][0]) - std::exp(paths.x[i][1]) - strike, 0.0);
    }
    const Summary s = summarize(pair_average(payoff, antithetic));
    results.push_back({s.mean, s.std_error, paths.x.size(), paths.elapsed_seconds});
  }
  return results;
}

std::vector<McResult> price_spread_mc(const Model& model, const MarketState& state,
                                      const std::vector<double>& strikes, double maturity, const McConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const TerminalPaths paths = simulate_terminal(model, state, maturity, cfg);
  auto results = price_spread_from_paths(paths, strikes, std::exp(-state.r * maturity), cfg.antithetic);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (auto& r : results) r.elapsed_seconds = elapsed;
  return results;
}

McResult price_spread_mc(const Model& model, const MarketState& state, const SpreadContract& contract,
                         const McConfig& cfg) {
  if (!(contract.strike > 0.0) || !(contract.maturity > 0.0)) {
    throw ValidationError("contract requires K > 0 and T > 0");
  }
  return price_spread_mc(model, state, std::vector<double>{contract.strike}, contract.maturity, cfg).front();
}

std::vector<EmpiricalCf> empirical_cf(const TerminalPaths& paths, const MarketState& state,
                                      const std::vector<Vec2>& us, bool antithetic) {
  const Vec2 x0{std::log(state.s0[0]), std::log(state.s0[1])};
  std::vector<EmpiricalCf> out;
  out.reserve(us.size());
  std::vector<double> re(paths.x.size());
  std::vector<double> im(paths.x.size());
  for (const Vec2& u : us) {
    for (std::size_t i = 0; i < paths.x.size(); ++i) {
      const double phase = u[0] * (paths.x[i][0] - x0[0]) + u[1] * (paths.x[i][1] - x0[1]);
      re[i] = std::cos(phase);
      im[i] = std::sin(phase);
    }
    const Summary sr = summarize(pair_average(re, antithetic));
    const Summary si = summarize(pair_average(im, antithetic));
    out.push_back({cplx(sr.mean, si.mean), sr.std_error, si.std_error});
  }
  return out;
}

EmpiricalCf empirical_cf(const Model& model, const MarketState& state, double tau, const Vec2& u,
                         const McConfig& cfg) {
  const TerminalPaths paths = simulate_terminal(model, state, tau, cfg);
  return empirical_cf(paths, state, std::vector<Vec2>{u}, cfg.antithetic).front();
}

}  // namespace spreadfft
