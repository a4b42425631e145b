// Command-line driver: price, mc, compare, sweep and selftest.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spreadfft/commands.hpp"
#include "spreadfft/config.hpp"
#include "spreadfft/errors.hpp"

namespace {

struct Options {
  std::string config;
  std::vector<std::string> overrides;
  std::string out = "-";
  long long seed = -1;
  unsigned threads = 0;
};

spreadfft::RunConfig load(const Options& opt) {
  spreadfft::KeyValues kv;
  if (opt.config == "-") {
    kv = spreadfft::parse_key_values(std::cin);
  } else {
    std::ifstream file(opt.config);
    if (!file) throw spreadfft::ParseError(0, "cannot open config file '" + opt.config + "'");
    kv = spreadfft::parse_key_values(file);
  }
  for (const auto& assignment : opt.overrides) spreadfft::apply_override(kv, assignment);
  if (opt.seed >= 0) kv.set("mc.seed", std::to_string(opt.seed));
  spreadfft::RunConfig cfg = spreadfft::build_run_config(kv);
  cfg.fft.threads = opt.threads;
  cfg.mc.threads = opt.threads;
  for (const auto& w : cfg.report.warnings) std::cerr << "warning: " << w << "\n";
  return cfg;
}

void emit(const Options& opt, const std::string& text) {
  if (opt.out == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream file(opt.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + opt.out + "'");
  file << text;
}

void add_common(CLI::App* cmd, Options& opt, bool needs_config = true) {
  auto* c = cmd->add_option("--config", opt.config, "Config file path, '-' for stdin");
  if (needs_config) c->required();
  cmd->add_option("--set", opt.overrides, "Override a config value, section.key=value (repeatable)");
  cmd->add_option("--out", opt.out, "Output path (default stdout)");
  cmd->add_option("--seed", opt.seed, "Monte Carlo seed (overrides mc.seed)");
  cmd->add_option("--threads", opt.threads, "Worker threads, 0 = hardware concurrency");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spread option pricing by two-dimensional FFT with a Monte Carlo cross-check"};
  app.require_subcommand(1);
  Options opt;

  auto* price = app.add_subcommand("price", "FFT price as a single-line JSON record");
  auto* mc = app.add_subcommand("mc", "Monte Carlo price as a single-line JSON record");
  auto* compare = app.add_subcommand("compare", "CSV of MC vs FFT prices over compare.strikes");
  auto* sweep = app.add_subcommand("sweep", "CSV table of FFT prices over one or two sweep axes");
  auto* selftest = app.add_subcommand("selftest", "Run quick internal consistency checks");
  for (auto* cmd : {price, mc, compare, sweep}) add_common(cmd, opt);
  add_common(selftest, opt, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (selftest->parsed()) {
      std::ostringstream os;
      bool ok = true;
      for (const auto& check : spreadfft::cmd_selftest()) {
        os << (check.passed ? "PASS " : "FAIL ") << check.name << " (" << check.detail << ")\n";
        ok = ok && check.passed;
      }
      emit(opt, os.str());
      return ok ? 0 : 1;
    }

    const spreadfft::RunConfig cfg = load(opt);
    if (price->parsed()) {
      emit(opt, spreadfft::cmd_price(cfg) + "\n");
    } else if (mc->parsed()) {
      emit(opt, spreadfft::cmd_mc(cfg) + "\n");
    } else if (compare->parsed()) {
      std::vector<double> strikes = cfg.compare_strikes;
      if (strikes.empty()) strikes.push_back(cfg.contract.strike);
      emit(opt, spreadfft::format_compare_csv(spreadfft::cmd_compare(cfg, strikes)));
    } else if (sweep->parsed()) {
      const auto result = spreadfft::cmd_sweep(cfg, opt.threads);
      emit(opt, spreadfft::format_sweep_csv(result));
      if (result.has_errors()) {
        for (const auto& cell : result.cells) {
          if (!cell.price && !cell.warnings.empty()) std::cerr << "error: " << cell.warnings.back() << "\n";
        }
        return 1;
      }
    }
  } catch (const spreadfft::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const spreadfft::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const spreadfft::Error& e) {
    std::cerr << "error [" << spreadfft::error_code_name(e.code()) << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
