#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "spreadfft/commands.hpp"
#include "spreadfft/config.hpp"
#include "spreadfft/errors.hpp"
#include "spreadfft/payoff.hpp"
#include "spreadfft/pricer.hpp"

namespace py = pybind11;

namespace {

spreadfft::RunConfig load(const std::string& text, const std::vector<std::string>& overrides) {
  std::istringstream in(text);
  spreadfft::KeyValues kv = spreadfft::parse_key_values(in);
  for (const auto& o : overrides) spreadfft::apply_override(kv, o);
  return spreadfft::build_run_config(kv);
}

}  // namespace

PYBIND11_MODULE(_spreadfft, m) {
  m.doc() = "Spread option pricing by two-dimensional FFT";

  static py::exception<spreadfft::Error> error(m, "SpreadFftError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const spreadfft::Error& e) {
      const std::string msg = std::string(spreadfft::error_code_name(e.code())) + ": " + e.what();
      PyErr_SetString(error.ptr(), msg.c_str());
    }
  });

  m.def(
      "price_json",
      [](const std::string& config, const std::vector<std::string>& overrides) {
        return spreadfft::cmd_price(load(config, overrides));
      },
      py::arg("config"), py::arg("overrides") = std::vector<std::string>{},
      "JSON record of the FFT price for a config given as text.");

  m.def(
      "compare_csv",
      [](const std::string& config, const std::vector<double>& strikes, const std::vector<std::string>& overrides) {
        const auto cfg = load(config, overrides);
        return spreadfft::format_compare_csv(spreadfft::cmd_compare(cfg, strikes));
      },
      py::arg("config"), py::arg("strikes"), py::arg("overrides") = std::vector<std::string>{});

  m.def(
      "sweep_csv",
      [](const std::string& config, const std::vector<std::string>& overrides, unsigned threads) {
        return spreadfft::format_sweep_csv(spreadfft::cmd_sweep(load(config, overrides), threads));
      },
      py::arg("config"), py::arg("overrides") = std::vector<std::string>{}, py::arg("threads") = 0);

  m.def(
      "payoff_hat",
      [](std::complex<double> u1, std::complex<double> u2) { return spreadfft::spread_payoff_hat({u1, u2}); },
      py::arg("u1"), py::arg("u2"), "Transform of the unit-strike spread payoff at a complex frequency.");

  m.def(
      "select_step",
      [](int n, double x0, double u_min) {
        const auto s = spreadfft::select_step(n, x0, u_min);
        return py::make_tuple(s.du, s.target_index, s.u_bar);
      },
      py::arg("n"), py::arg("x0"), py::arg("u_min"), "(du, target_index, u_bar) for one axis.");
}
