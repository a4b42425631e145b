#include "spreadfft/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "spreadfft/errors.hpp"
#include "spreadfft/fft.hpp"
#include "spreadfft/parallel.hpp"
#include "spreadfft/payoff.hpp"
#include "spreadfft/philox.hpp"

namespace spreadfft {

namespace {

using nlohmann::json;

json to_json(const Vec2& v) { return json::array({v[0], v[1]}); }

json grid_json(const FftGridConfig& cfg, const FftGrid& g) {
  return {{"n", g.n},
          {"u_min", cfg.u_min},
          {"eps", to_json(cfg.eps)},
          {"sign", cfg.sign},
          {"form", cfg.form == RiccatiForm::derived ? "derived" : "as_printed"},
          {"du", to_json(g.du)},
          {"dx", to_json(g.dx)},
          {"u_bar", to_json(g.u_bar)},
          {"x_bar", to_json(g.x_bar)},
          {"target_index", json::array({g.target_index[0], g.target_index[1]})}};
}

json header_json(const char* command, const RunConfig& cfg) {
  return {{"command", command},
          {"model", model_name(cfg.model)},
          {"K", cfg.contract.strike},
          {"T", cfg.contract.maturity},
          {"s0", to_json(cfg.market.s0)},
          {"r", cfg.market.r}};
}

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Spread call under correlated lognormal terminal prices, integrating the
// Black-Scholes call on S1 against the density of S2 (composite Simpson).
double lognormal_spread_reference(const Vec2& s0, const Vec2& vol, double rho, double r, double t, double k) {
  const double m1 = std::log(s0[0]) + (r - 0.5 * vol[0] * vol[0]) * t;
  const double m2 = std::log(s0[1]) + (r - 0.5 * vol[1] * vol[1]) * t;
  const double s1 = vol[0] * std::sqrt(t);
  const double s2 = vol[1] * std::sqrt(t);
  const double s1c = s1 * std::sqrt(1.0 - rho * rho);
  const int panels = 4000;
  const double lo = -10.0;
  const double h = 20.0 / panels;
  double sum = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double z = lo + i * h;
    const double strike = std::exp(m2 + s2 * z) + k;
    const double mu = m1 + s1 * rho * z;
    const double d2 = (mu - std::log(strike)) / s1c;
    const double call = std::exp(mu + 0.5 * s1c * s1c) * standard_normal_cdf(d2 + s1c) - strike * standard_normal_cdf(d2);
    const double weight = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += weight * call * std::exp(-0.5 * z * z);
  }
  return std::exp(-r * t) * sum * h / 3.0 / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

std::string format_fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  // Avoid "-0.000000" so identical prices always print identically.
  if (std::string_view(buf) == "-0.000000") return "0.000000";
  return buf;
}

std::string cmd_price(const RunConfig& cfg) {
  const PriceResult res = price_spread_fft(cfg.model, cfg.market, cfg.contract, cfg.fft);
  json out = header_json("price", cfg);
  std::vector<std::string> warnings = cfg.report.warnings;
  warnings.insert(warnings.end(), res.warnings.begin(), res.warnings.end());
  out["price"] = res.price;
  out["imag_residue"] = res.imag_residue;
  out["grid"] = grid_json(cfg.fft, res.grid);
  out["cf_evals"] = res.cf_evals;
  out["warnings"] = warnings;
  out["elapsed_seconds"] = res.elapsed_seconds;
  return out.dump();
}

std::string cmd_mc(const RunConfig& cfg) {
  McConfig mc = cfg.mc;
  const McResult res = price_spread_mc(cfg.model, cfg.market, cfg.contract, mc);
  json out = header_json("mc", cfg);
  out["price"] = res.estimate;
  out["std_error"] = res.std_error;
  out["n_paths"] = res.n_paths;
  out["n_steps"] = steps_for(mc, cfg.contract.maturity);
  out["seed"] = mc.seed;
  out["antithetic"] = mc.antithetic;
  out["warnings"] = cfg.report.warnings;
  out["elapsed_seconds"] = res.elapsed_seconds;
  return out.dump();
}

std::vector<CompareRow> cmd_compare(const RunConfig& cfg, std::vector<double> strikes) {
  std::sort(strikes.begin(), strikes.end());
  std::vector<CompareRow> rows(strikes.size());
  for (std::size_t i = 0; i < strikes.size(); ++i) {
    SpreadContract contract = cfg.contract;
    contract.strike = strikes[i];
    rows[i].strike = strikes[i];
    rows[i].fft_price = price_spread_fft(cfg.model, cfg.market, contract, cfg.fft).price;
  }
  if (cfg.mc.n_paths > 0 && !strikes.empty()) {
    const auto mc = price_spread_mc(cfg.model, cfg.market, strikes, cfg.contract.maturity, cfg.mc);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      rows[i].mc_price = mc[i].estimate;
      rows[i].mc_stderr = mc[i].std_error;
      rows[i].rel_err_percent = 100.0 * (rows[i].fft_price - mc[i].estimate) / mc[i].estimate;
    }
  }
  return rows;
}

std::string format_compare_csv(const std::vector<CompareRow>& rows) {
  auto opt = [](const std::optional<double>& v) { return v ? format_fixed6(*v) : std::string(); };
  std::string out = "K,mc_price,mc_stderr,fft_price,rel_err_percent\n";
  for (const auto& row : rows) {
    out += format_fixed6(row.strike) + "," + opt(row.mc_price) + "," + opt(row.mc_stderr) + "," +
           format_fixed6(row.fft_price) + "," + opt(row.rel_err_percent) + "\n";
  }
  return out;
}

bool SweepResult::has_errors() const {
  return std::any_of(cells.begin(), cells.end(), [](const SweepCell& c) { return !c.price; });
}

const SweepCell& SweepResult::at(std::size_t i1, std::size_t i2) const {
  const std::size_t cols = axes.size() > 1 ? axes[1].values.size() : 1;
  return cells.at(i1 * cols + i2);
}

SweepResult cmd_sweep(const RunConfig& cfg, unsigned threads) {
  if (cfg.sweep.empty() || cfg.sweep.size() > 2) throw ValidationError("sweep: one or two axes required");
  SweepResult result;
  result.axes = cfg.sweep;
  const std::size_t rows = cfg.sweep[0].values.size();
  const std::size_t cols = cfg.sweep.size() > 1 ? cfg.sweep[1].values.size() : 1;
  result.cells.resize(rows * cols);

  parallel_for(rows * cols, threads, [&](std::size_t idx) {
    SweepCell& cell = result.cells[idx];
    cell.value1 = cfg.sweep[0].values[idx / cols];
    KeyValues kv = cfg.raw;
    set_value(kv, cfg.sweep[0].key, cell.value1);
    if (cfg.sweep.size() > 1) {
      cell.value2 = cfg.sweep[1].values[idx % cols];
      set_value(kv, cfg.sweep[1].key, cell.value2);
    }
    try {
      const RunConfig cell_cfg = build_run_config_lenient(kv);
      FftGridConfig fft = cell_cfg.fft;
      fft.threads = 1;
      const PriceResult res = price_spread_fft(cell_cfg.model, cell_cfg.market, cell_cfg.contract, fft);
      cell.price = res.price;
      cell.warnings = cell_cfg.report.warnings;
      cell.warnings.insert(cell.warnings.end(), res.warnings.begin(), res.warnings.end());
    } catch (const Error& e) {
      cell.error = error_code_name(e.code());
      cell.warnings.push_back(e.what());
    } catch (const std::exception& e) {
      cell.error = "Unknown";
      cell.warnings.push_back(e.what());
    }
  });
  return result;
}

std::string format_sweep_csv(const SweepResult& result) {
  auto cell_text = [](const SweepCell& c) { return c.price ? format_fixed6(*c.price) : "ERR:" + c.error; };
  std::string out;
  const auto& a1 = result.axes.at(0);
  if (result.axes.size() == 1) {
    out = a1.key + ",price\n";
    for (std::size_t i = 0; i < a1.values.size(); ++i) {
      out += format_fixed6(a1.values[i]) + "," + cell_text(result.at(i)) + "\n";
    }
    return out;
  }
  const auto& a2 = result.axes[1];
  out = a1.key + "\\" + a2.key;
  for (double v : a2.values) out += "," + format_fixed6(v);
  out += "\n";
  for (std::size_t i = 0; i < a1.values.size(); ++i) {
    out += format_fixed6(a1.values[i]);
    for (std::size_t j = 0; j < a2.values.size(); ++j) out += "," + cell_text(result.at(i, j));
    out += "\n";
  }
  return out;
}

std::vector<SelftestCheck> cmd_selftest() {
  std::vector<SelftestCheck> checks;
  auto run = [&](const std::string& name, auto&& body) {
    SelftestCheck check{name, false, {}};
    try {
      check.passed = body(check.detail);
    } catch (const std::exception& e) {
      check.detail = e.what();
    }
    checks.push_back(std::move(check));
  };

  run("philox known-answer vector", [](std::string& detail) {
    const auto out = Philox4x32(Philox4x32::Key{0, 0})({0, 0, 0, 0});
    detail = "first word " + std::to_string(out[0]);
    return out == Philox4x32::Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8};
  });

  run("payoff transform at the origin", [](std::string& detail) {
    const cplx h = spread_payoff_hat(DampedArgument{{0.0, 0.0}, {-3.0, 1.0}});
    detail = "value " + std::to_string(h.real());
    return std::abs(h - 1.0 / 6.0) < 1e-12;
  });

  run("inverse dft2 against direct sum", [](std::string& detail) {
    const std::size_t n = 8;
    ComplexMatrix m(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) m(a, b) = cplx(std::sin(1.0 + a * 3.1 + b), std::cos(0.3 * a - b));
    const ComplexMatrix fast = inverse_dft2(m, +1);
    double err = 0.0;
    for (std::size_t l1 = 0; l1 < n; ++l1)
      for (std::size_t l2 = 0; l2 < n; ++l2) {
        cplx s = 0.0;
        for (std::size_t k1 = 0; k1 < n; ++k1)
          for (std::size_t k2 = 0; k2 < n; ++k2)
            s += m(k1, k2) * std::polar(1.0, 2.0 * std::numbers::pi * double(k1 * l1 + k2 * l2) / n);
        err = std::max(err, std::abs(s / double(n * n) - fast(l1, l2)));
      }
    detail = "max error " + std::to_string(err);
    return err < 1e-12;
  });

  run("lognormal limit against 1D quadrature", [](std::string& detail) {
    auto [model, state] = benchmark_proportional();
    model.jumps.lambda = 0.0;
    model.cir.vol_of_vol = 1e-8;
    model.cir.v0 = model.cir.v_bar;
    const SpreadContract contract{2.0, 1.0};
    FftGridConfig fft;
    fft.n = 256;
    const double v = price_spread_fft(model, state, contract, fft).price;
    const Vec2 vol{model.sigma[0] * std::sqrt(model.cir.v_bar), model.sigma[1] * std::sqrt(model.cir.v_bar)};
    const double ref = lognormal_spread_reference(state.s0, vol, model.rho_ss, state.r, 1.0, 2.0);
    detail = "fft " + format_fixed6(v) + " reference " + format_fixed6(ref);
    return std::abs(v / ref - 1.0) < 2e-3;
  });

  run("benchmark price is finite and positive", [](std::string& detail) {
    const auto [model, state] = benchmark_proportional();
    FftGridConfig fft;
    fft.n = 256;
    const PriceResult res = price_spread_fft(model, state, {2.0, 1.0}, fft);
    detail = "price " + format_fixed6(res.price);
    return std::isfinite(res.price) && res.price > 0.0;
  });

  return checks;
}

}  // namespace spreadfft
