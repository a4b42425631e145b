#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "spreadfft/types.hpp"

namespace spreadfft {

/// Square-root (CIR) variance process dV = kappa (v_bar - V) dt + vol_of_vol sqrt(V) dW.
struct CirParams {
  double kappa = 1.0;
  double v_bar = 0.04;
  double vol_of_vol = 0.05;
  double v0 = 0.04;

  /// 2 kappa v_bar / vol_of_vol^2; below 1 the process can touch zero.
  double feller_ratio() const { return 2.0 * kappa * v_bar / (vol_of_vol * vol_of_vol); }
};

/// Compound Poisson jumps with jointly normal log-jump sizes N(k_bar, jump_cov).
struct JumpParams {
  double lambda = 0.0;
  Vec2 k_bar{0.0, 0.0};
  Mat2 jump_cov{};

  static JumpParams from_std(double lambda, Vec2 k_bar, Vec2 delta, double corr = 0.0);
  Vec2 delta() const;
  double correlation() const;
};

/// Each asset carries its own variance process; the continuous parts are
/// uncorrelated across assets and dependence enters only through jumps.
struct IndependentVolModel {
  Vec2 sigma{1.0, 1.0};
  std::array<CirParams, 2> cir{};
  Vec2 rho_sv{0.0, 0.0};
  JumpParams jumps{};
};

/// One variance process shared by both assets, scaled by sigma per asset.
struct ProportionalVolModel {
  Vec2 sigma{1.0, 1.0};
  CirParams cir{};
  double rho_ss = 0.0;
  Vec2 rho_sv{0.0, 0.0};
  JumpParams jumps{};

  /// Correlation of (W^{S1}, W^{S2}, W^V).
  Mat3 correlation() const;
};

using Model = std::variant<IndependentVolModel, ProportionalVolModel>;

struct MarketState {
  Vec2 s0{100.0, 100.0};
  double r = 0.0;
};

struct SpreadContract {
  double strike = 1.0;
  double maturity = 1.0;
};

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;

  bool ok() const { return violations.empty(); }
  void merge(const ValidationReport& other);
};

ValidationReport validate(const CirParams& cir, const std::string& prefix = "cir");
ValidationReport validate(const JumpParams& jumps);
ValidationReport validate(const IndependentVolModel& model);
ValidationReport validate(const ProportionalVolModel& model);
ValidationReport validate(const Model& model);
ValidationReport validate(const MarketState& state);
ValidationReport validate(const SpreadContract& contract);

/// Benchmark parameter set for the proportional-volatility model.
std::pair<ProportionalVolModel, MarketState> benchmark_proportional();

/// Independent-volatility counterpart of the benchmark: both assets carry a
/// copy of the benchmark variance process and keep their asset-vol correlations.
std::pair<IndependentVolModel, MarketState> benchmark_independent();

const char* model_name(const Model& model);

}  // namespace spreadfft
