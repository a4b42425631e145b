#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "spreadfft/mc.hpp"
#include "spreadfft/model.hpp"
#include "spreadfft/pricer.hpp"

namespace spreadfft {

/// Flat `section.key -> value` view of a config file, with source lines.
class KeyValues {
 public:
  struct Entry {
    std::string value;
    int line = 0;
  };

  void set(const std::string& key, std::string value, int line = 0);
  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  const Entry* find(const std::string& key) const;
  void erase(const std::string& key) { entries_.erase(key); }
  const std::map<std::string, Entry>& entries() const { return entries_; }

 private:
  std::map<std::string, Entry> entries_;
};

/// Parses `[section]` headers, `key = value` lines and `#` comments.
/// Throws ParseError with the offending line number.
KeyValues parse_key_values(std::istream& in);

/// Applies a `--set section.key=value` override. Vector components can be
/// addressed by asset index, e.g. `model.sigma[2]=0.7`.
void apply_override(KeyValues& kv, const std::string& assignment);

/// Sets one value, resolving `key[i]` component addressing against the
/// current vector value.
void set_value(KeyValues& kv, const std::string& key, double value);

/// True if `key` (optionally with a `[1]`/`[2]` suffix) names a config field.
bool is_known_key(const std::string& key);

struct SweepAxis {
  std::string key;
  std::vector<double> values;
};

struct RunConfig {
  Model model;
  MarketState market;
  SpreadContract contract;
  FftGridConfig fft;
  McConfig mc;
  std::vector<SweepAxis> sweep;
  std::vector<double> compare_strikes;
  ValidationReport report;
  KeyValues raw;
};

/// Builds and validates a RunConfig. Defaults: fft.n = 512, fft.u_min = 40,
/// fft.eps = (-3, 1), fft.sign = +1, mc.n_paths = 1e6, mc.n_steps = 2000.
/// Throws ValidationError listing every offending field.
RunConfig build_run_config(const KeyValues& kv);

/// Like build_run_config but only requires the fields needed to price, and
/// does not reject invalid model parameters (they are reported in `report`).
RunConfig build_run_config_lenient(const KeyValues& kv);

RunConfig parse_config(std::istream& in);
/// `path == "-"` reads standard input.
RunConfig parse_config(const std::string& path);

/// "a, b, c" or "start:stop:count" (count points, inclusive).
std::vector<double> parse_value_list(const std::string& text);

}  // namespace spreadfft
