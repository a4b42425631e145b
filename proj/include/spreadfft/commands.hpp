#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spreadfft/config.hpp"

namespace spreadfft {

/// Single-line JSON record for one FFT price: price, grid metadata, timing.
std::string cmd_price(const RunConfig& cfg);

/// Single-line JSON record for one Monte Carlo price.
std::string cmd_mc(const RunConfig& cfg);

struct CompareRow {
  double strike = 0.0;
  std::optional<double> mc_price;
  std::optional<double> mc_stderr;
  double fft_price = 0.0;
  std::optional<double> rel_err_percent;  ///< 100 (fft - mc) / mc
};

/// Prices every strike by FFT and, unless mc.n_paths == 0, by Monte Carlo off
/// one path set. Rows are in ascending strike order.
std::vector<CompareRow> cmd_compare(const RunConfig& cfg, std::vector<double> strikes);

/// `K,mc_price,mc_stderr,fft_price,rel_err_percent` with 6 decimals.
std::string format_compare_csv(const std::vector<CompareRow>& rows);

struct SweepCell {
  double value1 = 0.0;
  double value2 = 0.0;
  std::optional<double> price;
  std::string error;  ///< error code name when price is empty
  std::vector<std::string> warnings;
};

struct SweepResult {
  std::vector<SweepAxis> axes;
  std::vector<SweepCell> cells;  ///< row-major by the first axis

  bool has_errors() const;
  const SweepCell& at(std::size_t i1, std::size_t i2 = 0) const;
};

/// Prices the cartesian product of the sweep axes by FFT on a worker pool.
/// Cell failures are recorded in-cell; the run always completes.
SweepResult cmd_sweep(const RunConfig& cfg, unsigned threads = 0);

/// One-axis sweeps print `axis,price` rows; two-axis sweeps print a header of
/// second-axis values and one row per first-axis value. Errors read ERR:<code>.
std::string format_sweep_csv(const SweepResult& result);

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Quick internal consistency checks (seconds, no external files).
std::vector<SelftestCheck> cmd_selftest();

/// Fixed 6-decimal formatting used by every CSV writer.
std::string format_fixed6(double v);

}  // namespace spreadfft
