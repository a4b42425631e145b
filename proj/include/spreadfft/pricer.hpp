#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "spreadfft/charfn.hpp"
#include "spreadfft/fft.hpp"
#include "spreadfft/model.hpp"

namespace spreadfft {

/// Grid settings for the two-dimensional FFT pricer.
struct FftGridConfig {
  int n = 512;
  double u_min = 40.0;
  Vec2 eps{-3.0, 1.0};
  /// Exponent sign of the discrete transform. +1 is the sign that follows
  /// from expanding exp(i u(k).x(l)) on the lattices and is the default.
  int sign = +1;
  unsigned threads = 0;
  RiccatiForm form = RiccatiForm::derived;
};

/// Throws ValidationError unless n is a power of two in [64, 4096] (hence a
/// multiple of 4), u_min > 0 and eps is in the admissible damping region.
void validate(const FftGridConfig& cfg);

struct StepSelection {
  double du = 0.0;
  int target_index = 0;
  double u_bar = 0.0;
};

/// Smallest frequency half-width u_bar >= u_min of the form pi (j - n/2) / x0
/// over integer j in [0, n-1], so that the log-price lattice hits x0 exactly
/// at index j. x0 == 0 falls back to du = 2 u_min / n, j = n/2.
/// Throws NoFeasibleStepError when no such j exists.
StepSelection select_step(int n, double x0, double u_min);

struct FftGrid {
  int n = 0;
  Vec2 du{};
  Vec2 dx{};
  Vec2 u_bar{};
  Vec2 x_bar{};
  std::array<int, 2> target_index{};
  Vec2 x0{};

  double u(int axis, int k) const { return -u_bar[axis] + k * du[axis]; }
  double x(int axis, int l) const { return -x_bar[axis] + l * dx[axis]; }
};

/// Per-axis grids on the log-moneyness axes log(S0 / K).
FftGrid build_grid(const FftGridConfig& cfg, const MarketState& state, const SpreadContract& contract);

using CfEvaluator = std::function<cplx(const CVec2&)>;
using PayoffEvaluator = std::function<cplx(const CVec2&)>;

/// G(k) = (-1)^{k1+k2} cf(u(k) + i eps) payoff(u(k) + i eps), rows indexed by k1.
/// A NonFiniteError from the evaluators is rethrown with the offending (k1, k2).
ComplexMatrix assemble_g(const FftGrid& grid, const Vec2& eps, const CfEvaluator& cf,
                         const PayoffEvaluator& payoff, unsigned threads = 1);

struct PriceResult {
  double price = 0.0;
  double imag_residue = 0.0;
  FftGrid grid;
  std::size_t cf_evals = 0;
  std::vector<std::string> warnings;
  double elapsed_seconds = 0.0;
};

/// Spread call price by two-dimensional FFT inversion, strike handled by
/// scaling both spots by 1/K. Throws DampingViolationError, NoFeasibleStepError,
/// NonFiniteError, ImaginaryResidueError or NegativePriceError.
PriceResult price_spread_fft(const Model& model, const MarketState& state, const SpreadContract& contract,
                             const FftGridConfig& cfg = {});

}  // namespace spreadfft
