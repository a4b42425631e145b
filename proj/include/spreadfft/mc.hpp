#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "spreadfft/model.hpp"
#include "spreadfft/types.hpp"

namespace spreadfft {

struct McConfig {
  std::size_t n_paths = 1'000'000;
  /// Time steps per year; a run uses max(1, round(n_steps * maturity)).
  std::size_t n_steps = 2000;
  std::uint64_t seed = 20240901;
  bool antithetic = false;
  unsigned threads = 0;
  /// Accumulate sample moments of the Brownian increments (diagnostics).
  bool record_drivers = false;
};

/// Throws ValidationError unless n_paths >= 2 and n_steps >= 1.
void validate(const McConfig& cfg);

/// Steps actually simulated for a horizon of `tau` years.
std::size_t steps_for(const McConfig& cfg, double tau);

/// Sample moments of the normalised asset Brownian increments, summed over
/// every simulated step of every path.
struct DriverStats {
  double count = 0.0;
  double sum_z1 = 0.0;
  double sum_z2 = 0.0;
  double sum_z1z1 = 0.0;
  double sum_z2z2 = 0.0;
  double sum_z1z2 = 0.0;
  double sum_z1z2_sq = 0.0;
};

struct TerminalPaths {
  std::vector<Vec2> x;  ///< terminal log-prices log S_T
  std::vector<Vec2> v;  ///< terminal variances (floored); both equal for the proportional model
  std::size_t steps = 0;
  std::size_t floored_steps = 0;  ///< variance updates that went below zero
  DriverStats drivers;
  double elapsed_seconds = 0.0;

  double floored_fraction() const;
};

/// Lower Cholesky factor of a correlation matrix. Throws NotPsdError if a
/// pivot is below -1e-12.
Mat2 chol2(const Mat2& corr);
Mat3 chol3(const Mat3& corr);

/// Euler simulation of (log S, V) to `tau`: full truncation for the variance,
/// correlated drivers, and a common Poisson clock whose jumps add a jointly
/// normal vector to both log-prices at the end of the step. Reproducible for a
/// fixed seed regardless of thread count.
TerminalPaths simulate_terminal(const Model& model, const MarketState& state, double tau, const McConfig& cfg);

struct McResult {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t n_paths = 0;
  double elapsed_seconds = 0.0;
};

/// Discounted mean of (S1_T - S2_T - K)_+.
McResult price_spread_mc(const Model& model, const MarketState& state, const SpreadContract& contract,
                         const McConfig& cfg);

/// Prices several strikes off one set of simulated paths.
std::vector<McResult> price_spread_mc(const Model& model, const MarketState& state,
                                      const std::vector<double>& strikes, double maturity, const McConfig& cfg);

std::vector<McResult> price_spread_from_paths(const TerminalPaths& paths, const std::vector<double>& strikes,
                                              double discount, bool antithetic);

struct EmpiricalCf {
  cplx mean;
  double std_error_re = 0.0;
  double std_error_im = 0.0;
};

/// Mean of exp(i u.(X_tau - X_0)) over simulated paths.
EmpiricalCf empirical_cf(const Model& model, const MarketState& state, double tau, const Vec2& u,
                         const McConfig& cfg);

std::vector<EmpiricalCf> empirical_cf(const TerminalPaths& paths, const MarketState& state,
                                      const std::vector<Vec2>& us, bool antithetic);

}  // namespace spreadfft
