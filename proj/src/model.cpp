#include "spreadfft/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spreadfft {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void check_correlation(ValidationReport& report, const std::string& name, double rho) {
  if (!(rho >= -1.0 && rho <= 1.0)) {
    report.violations.push_back("correlation out of range: " + name + " = " + fmt(rho));
  }
}

// Shared PSD test for correlation matrices: the Cholesky factorization must
// succeed once 1e-12 is added to the diagonal.
template <std::size_t N>
void check_psd(ValidationReport& report, const std::string& name, const Matrix<N>& corr) {
  Matrix<N> shifted = corr;
  for (std::size_t i = 0; i < N; ++i) shifted[i][i] += 1e-12;
  Matrix<N> lower{};
  if (!cholesky_lower(shifted, lower, 0.0)) {
    report.violations.push_back("correlation matrix not PSD: " + name);
    return;
  }
  double min_pivot = 1.0;
  for (std::size_t i = 0; i < N; ++i) min_pivot = std::min(min_pivot, lower[i][i] * lower[i][i]);
  if (min_pivot < 1e-8) report.warnings.push_back("near-singular correlation matrix: " + name);
}

}  // namespace

JumpParams JumpParams::from_std(double lambda, Vec2 k_bar, Vec2 delta, double corr) {
  JumpParams j;
  j.lambda = lambda;
  j.k_bar = k_bar;
  j.jump_cov = {{{delta[0] * delta[0], corr * delta[0] * delta[1]},
                 {corr * delta[0] * delta[1], delta[1] * delta[1]}}};
  return j;
}

Vec2 JumpParams::delta() const { return {std::sqrt(jump_cov[0][0]), std::sqrt(jump_cov[1][1])}; }

double JumpParams::correlation() const {
  const double denom = std::sqrt(jump_cov[0][0] * jump_cov[1][1]);
  return denom > 0.0 ? jump_cov[0][1] / denom : 0.0;
}

Mat3 ProportionalVolModel::correlation() const {
  return {{{1.0, rho_ss, rho_sv[0]}, {rho_ss, 1.0, rho_sv[1]}, {rho_sv[0], rho_sv[1], 1.0}}};
}

void ValidationReport::merge(const ValidationReport& other) {
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
}

ValidationReport validate(const CirParams& cir, const std::string& prefix) {
  ValidationReport r;
  if (!(cir.kappa > 0.0)) r.violations.push_back(prefix + ".kappa must be > 0");
  if (!(cir.v_bar > 0.0)) r.violations.push_back(prefix + ".v_bar must be > 0");
  if (!(cir.vol_of_vol > 0.0)) r.violations.push_back(prefix + ".vol_of_vol must be > 0");
  if (!(cir.v0 >= 0.0)) r.violations.push_back(prefix + ".v0 must be >= 0");
  if (r.ok() && cir.feller_ratio() < 1.0) {
    r.warnings.push_back(prefix + ": Feller ratio " + fmt(cir.feller_ratio()) + " < 1");
  }
  return r;
}

ValidationReport validate(const JumpParams& jumps) {
  ValidationReport r;
  if (!(jumps.lambda >= 0.0)) r.violations.push_back("jumps.lambda must be >= 0");
  if (!std::isfinite(jumps.k_bar[0]) || !std::isfinite(jumps.k_bar[1])) {
    r.violations.push_back("jumps.k_bar must be finite");
  }
  const Mat2& c = jumps.jump_cov;
  if (c[0][1] != c[1][0]) r.violations.push_back("jump covariance not symmetric");
  Mat2 lower{};
  Mat2 shifted = c;
  shifted[0][0] += 1e-12;
  shifted[1][1] += 1e-12;
  if (!cholesky_lower(shifted, lower, 0.0)) r.violations.push_back("jump covariance not PSD");
  return r;
}

ValidationReport validate(const IndependentVolModel& model) {
  ValidationReport r;
  for (int m = 0; m < 2; ++m) {
    const std::string idx = std::to_string(m + 1);
    r.merge(validate(model.cir[m], "cir[" + idx + "]"));
    check_correlation(r, "rho_sv[" + idx + "]", model.rho_sv[m]);
    if (!std::isfinite(model.sigma[m]) || model.sigma[m] < 0.0) {
      r.violations.push_back("sigma[" + idx + "] must be >= 0");
    }
  }
  r.merge(validate(model.jumps));
  return r;
}

ValidationReport validate(const ProportionalVolModel& model) {
  ValidationReport r = validate(model.cir);
  check_correlation(r, "rho_ss", model.rho_ss);
  check_correlation(r, "rho_sv[1]", model.rho_sv[0]);
  check_correlation(r, "rho_sv[2]", model.rho_sv[1]);
  for (int m = 0; m < 2; ++m) {
    if (!std::isfinite(model.sigma[m]) || model.sigma[m] < 0.0) {
      r.violations.push_back("sigma[" + std::to_string(m + 1) + "] must be >= 0");
    }
  }
  if (r.ok()) check_psd(r, "(S1, S2, V)", model.correlation());
  r.merge(validate(model.jumps));
  return r;
}

ValidationReport validate(const Model& model) {
  return std::visit([](const auto& m) { return validate(m); }, model);
}

ValidationReport validate(const MarketState& state) {
  ValidationReport r;
  if (!(state.s0[0] > 0.0) || !(state.s0[1] > 0.0)) r.violations.push_back("s0 must be > 0");
  if (!std::isfinite(state.r)) r.violations.push_back("r must be finite");
  return r;
}

ValidationReport validate(const SpreadContract& contract) {
  ValidationReport r;
  if (!(contract.strike > 0.0)) r.violations.push_back("strike must be > 0");
  if (!(contract.maturity > 0.0)) r.violations.push_back("maturity must be > 0");
  return r;
}

std::pair<ProportionalVolModel, MarketState> benchmark_proportional() {
  ProportionalVolModel m;
  m.sigma = {1.0, 0.5};
  m.cir = CirParams{1.0, 0.04, 0.05, 0.04};
  m.rho_ss = 0.5;
  m.rho_sv = {-0.5, 0.25};
  m.jumps = JumpParams::from_std(1.0, {0.05, 0.05}, {0.05, 0.05}, 0.0);
  return {m, MarketState{{100.0, 96.0}, 0.1}};
}

std::pair<IndependentVolModel, MarketState> benchmark_independent() {
  const auto [prop, state] = benchmark_proportional();
  IndependentVolModel m;
  m.sigma = prop.sigma;
  m.cir = {prop.cir, prop.cir};
  m.rho_sv = prop.rho_sv;
  m.jumps = prop.jumps;
  return {m, state};
}

const char* model_name(const Model& model) {
  return std::holds_alternative<ProportionalVolModel>(model) ? "proportional" : "independent";
}

}  // namespace spreadfft
