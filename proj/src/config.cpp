#include "spreadfft/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "spreadfft/errors.hpp"

namespace spreadfft {

namespace {

enum class Kind { scalar, pair, scalar_or_pair, integer, text, flag, list };

struct Field {
  const char* key;
  Kind kind;
};

constexpr Field kFields[] = {
    {"model.variant", Kind::text},       {"model.sigma", Kind::pair},
    {"model.kappa", Kind::scalar_or_pair}, {"model.v_bar", Kind::scalar_or_pair},
    {"model.vol_of_vol", Kind::scalar_or_pair}, {"model.v0", Kind::scalar_or_pair},
    {"model.rho_ss", Kind::scalar},      {"model.rho_sv", Kind::pair},
    {"model.lambda", Kind::scalar},      {"model.k_bar", Kind::pair},
    {"model.delta", Kind::pair},         {"model.jump_corr", Kind::scalar},
    {"market.s0", Kind::pair},           {"market.r", Kind::scalar},
    {"market.spread", Kind::scalar},     {"contract.K", Kind::scalar},
    {"contract.T", Kind::scalar},        {"fft.n", Kind::integer},
    {"fft.u_min", Kind::scalar},         {"fft.eps", Kind::pair},
    {"fft.sign", Kind::integer},         {"fft.form", Kind::text},
    {"mc.n_paths", Kind::integer},       {"mc.n_steps", Kind::integer},
    {"mc.seed", Kind::integer},          {"mc.antithetic", Kind::flag},
    {"sweep.axis1", Kind::text},         {"sweep.values1", Kind::list},
    {"sweep.axis2", Kind::text},         {"sweep.values2", Kind::list},
    {"compare.strikes", Kind::list},
};

const Field* lookup(const std::string& key) {
  for (const Field& f : kFields) {
    if (key == f.key) return &f;
  }
  return nullptr;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<double> to_double(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) return std::nullopt;
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

std::string format_number(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << v;
  return os.str();
}

// Splits "model.sigma[2]" into ("model.sigma", 1).
std::pair<std::string, int> split_component(const std::string& key) {
  const auto open = key.find('[');
  if (open == std::string::npos || key.back() != ']') return {key, -1};
  const std::string idx = key.substr(open + 1, key.size() - open - 2);
  if (idx == "1") return {key.substr(0, open), 0};
  if (idx == "2") return {key.substr(0, open), 1};
  return {key, -2};
}

/// Collects errors while reading typed values out of a KeyValues.
class Reader {
 public:
  explicit Reader(const KeyValues& kv) : kv_(kv) {}

  std::vector<std::string> errors;

  bool has(const std::string& key) const { return kv_.has(key); }

  std::optional<double> scalar(const std::string& key, std::optional<double> fallback = std::nullopt) {
    const auto* e = kv_.find(key);
    if (!e) return missing(key, fallback);
    const auto v = to_double(e->value);
    if (!v) errors.push_back(key + ": not a number '" + e->value + "'" + at(*e));
    return v;
  }

  std::optional<Vec2> pair(const std::string& key, bool allow_scalar = false,
                           std::optional<Vec2> fallback = std::nullopt) {
    const auto* e = kv_.find(key);
    if (!e) {
      if (fallback) return fallback;
      errors.push_back(key + ": required");
      return std::nullopt;
    }
    const auto parts = split(e->value, ',');
    if (parts.size() == 1 && allow_scalar) {
      if (const auto v = to_double(parts[0])) return Vec2{*v, *v};
    }
    if (parts.size() == 2) {
      const auto a = to_double(parts[0]);
      const auto b = to_double(parts[1]);
      if (a && b) return Vec2{*a, *b};
    }
    errors.push_back(key + ": expected two comma-separated numbers, got '" + e->value + "'" + at(*e));
    return std::nullopt;
  }

  std::optional<long long> integer(const std::string& key, std::optional<long long> fallback = std::nullopt) {
    const auto* e = kv_.find(key);
    if (!e) {
      if (fallback) return fallback;
      errors.push_back(key + ": required");
      return std::nullopt;
    }
    const std::string t = trim(e->value);
    long long v = 0;
    const char* first = t.data() + (t.size() > 0 && t[0] == '+' ? 1 : 0);
    const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
      errors.push_back(key + ": not an integer '" + e->value + "'" + at(*e));
      return std::nullopt;
    }
    return v;
  }

  std::optional<std::string> text(const std::string& key) {
    const auto* e = kv_.find(key);
    if (!e) return std::nullopt;
    return trim(e->value);
  }

  std::vector<double> list(const std::string& key) {
    const auto* e = kv_.find(key);
    if (!e) return {};
    try {
      return parse_value_list(e->value);
    } catch (const std::exception& ex) {
      errors.push_back(key + ": " + ex.what() + at(*e));
      return {};
    }
  }

 private:
  std::optional<double> missing(const std::string& key, std::optional<double> fallback) {
    if (!fallback) errors.push_back(key + ": required");
    return fallback;
  }
  static std::string at(const KeyValues::Entry& e) {
    return e.line > 0 ? " (line " + std::to_string(e.line) + ")" : "";
  }

  const KeyValues& kv_;
};

RunConfig build(const KeyValues& kv, bool strict) {
  Reader rd(kv);
  RunConfig cfg;
  cfg.raw = kv;

  for (const auto& [key, entry] : kv.entries()) {
    if (!lookup(key)) rd.errors.push_back(key + ": unknown key (line " + std::to_string(entry.line) + ")");
  }

  const std::string variant = rd.text("model.variant").value_or("");
  const auto sigma = rd.pair("model.sigma");
  const auto rho_sv = rd.pair("model.rho_sv");
  const auto lambda = rd.scalar("model.lambda");
  const auto k_bar = rd.pair("model.k_bar");
  const auto delta = rd.pair("model.delta");
  const auto jump_corr = rd.scalar("model.jump_corr", 0.0);
  JumpParams jumps;
  if (lambda && k_bar && delta && jump_corr) jumps = JumpParams::from_std(*lambda, *k_bar, *delta, *jump_corr);

  if (variant == "proportional") {
    ProportionalVolModel m;
    const auto kappa = rd.scalar("model.kappa");
    const auto v_bar = rd.scalar("model.v_bar");
    const auto vol = rd.scalar("model.vol_of_vol");
    const auto v0 = rd.scalar("model.v0");
    const auto rho_ss = rd.scalar("model.rho_ss");
    if (kappa && v_bar && vol && v0) m.cir = {*kappa, *v_bar, *vol, *v0};
    if (sigma) m.sigma = *sigma;
    if (rho_ss) m.rho_ss = *rho_ss;
    if (rho_sv) m.rho_sv = *rho_sv;
    m.jumps = jumps;
    cfg.model = m;
  } else if (variant == "independent") {
    IndependentVolModel m;
    const auto kappa = rd.pair("model.kappa", true);
    const auto v_bar = rd.pair("model.v_bar", true);
    const auto vol = rd.pair("model.vol_of_vol", true);
    const auto v0 = rd.pair("model.v0", true);
    if (rd.has("model.rho_ss")) rd.errors.push_back("model.rho_ss: not a parameter of the independent model");
    if (kappa && v_bar && vol && v0) {
      for (int a = 0; a < 2; ++a) m.cir[a] = {(*kappa)[a], (*v_bar)[a], (*vol)[a], (*v0)[a]};
    }
    if (sigma) m.sigma = *sigma;
    if (rho_sv) m.rho_sv = *rho_sv;
    m.jumps = jumps;
    cfg.model = m;
  } else {
    rd.errors.push_back("model.variant: expected 'proportional' or 'independent', got '" + variant + "'");
  }

  if (const auto s0 = rd.pair("market.s0")) cfg.market.s0 = *s0;
  if (const auto r = rd.scalar("market.r")) cfg.market.r = *r;
  if (rd.has("market.spread")) {
    if (const auto spread = rd.scalar("market.spread")) cfg.market.s0[0] = cfg.market.s0[1] + *spread;
  }
  if (const auto k = rd.scalar("contract.K")) cfg.contract.strike = *k;
  if (const auto t = rd.scalar("contract.T")) cfg.contract.maturity = *t;

  if (const auto n = rd.integer("fft.n", 512)) cfg.fft.n = static_cast<int>(*n);
  if (const auto u = rd.scalar("fft.u_min", 40.0)) cfg.fft.u_min = *u;
  if (const auto eps = rd.pair("fft.eps", false, Vec2{-3.0, 1.0})) cfg.fft.eps = *eps;
  if (const auto sign = rd.integer("fft.sign", 1)) cfg.fft.sign = static_cast<int>(*sign);
  const std::string form = rd.text("fft.form").value_or("derived");
  if (form == "derived") {
    cfg.fft.form = RiccatiForm::derived;
  } else if (form == "as_printed") {
    cfg.fft.form = RiccatiForm::as_printed;
  } else {
    rd.errors.push_back("fft.form: expected 'derived' or 'as_printed'");
  }
  try {
    validate(cfg.fft);
  } catch (const DampingViolationError& e) {
    rd.errors.push_back(std::string("fft.eps: ") + e.what());
  } catch (const Error& e) {
    rd.errors.push_back(e.what());
  }

  if (const auto n = rd.integer("mc.n_paths", 1'000'000)) {
    if (*n < 0) rd.errors.push_back("mc.n_paths: must be >= 0");
    cfg.mc.n_paths = static_cast<std::size_t>(std::max(0LL, *n));
  }
  if (const auto n = rd.integer("mc.n_steps", 2000)) {
    if (*n < 1) rd.errors.push_back("mc.n_steps: must be >= 1");
    cfg.mc.n_steps = static_cast<std::size_t>(std::max(1LL, *n));
  }
  if (const auto s = rd.integer("mc.seed", 20240901)) cfg.mc.seed = static_cast<std::uint64_t>(*s);
  if (const auto a = rd.text("mc.antithetic")) {
    if (*a == "true" || *a == "1") {
      cfg.mc.antithetic = true;
    } else if (*a == "false" || *a == "0") {
      cfg.mc.antithetic = false;
    } else {
      rd.errors.push_back("mc.antithetic: expected true or false");
    }
  }

  for (int axis = 1; axis <= 2; ++axis) {
    const std::string name = "sweep.axis" + std::to_string(axis);
    const std::string values = "sweep.values" + std::to_string(axis);
    const auto key = rd.text(name);
    if (!key) {
      if (rd.has(values)) rd.errors.push_back(values + ": given without " + name);
      continue;
    }
    if (axis == 2 && cfg.sweep.empty()) rd.errors.push_back("sweep.axis2: requires sweep.axis1");
    if (!is_known_key(*key) || key->rfind("sweep.", 0) == 0 || key->rfind("model.variant", 0) == 0) {
      rd.errors.push_back(name + ": '" + *key + "' does not resolve to a numeric config field");
    }
    SweepAxis ax{*key, rd.list(values)};
    if (ax.values.empty()) rd.errors.push_back(values + ": at least one value required");
    cfg.sweep.push_back(std::move(ax));
  }
  cfg.compare_strikes = rd.list("compare.strikes");
  std::sort(cfg.compare_strikes.begin(), cfg.compare_strikes.end());

  cfg.report = validate(cfg.model);
  cfg.report.merge(validate(cfg.market));
  cfg.report.merge(validate(cfg.contract));
  if (strict) {
    if (rd.has("contract.K") && !(cfg.contract.strike > 0.0)) rd.errors.push_back("contract.K: must be > 0");
    if (rd.has("contract.T") && !(cfg.contract.maturity > 0.0)) rd.errors.push_back("contract.T: must be > 0");
    for (const auto& v : cfg.report.violations) rd.errors.push_back(v);
  }

  if (!rd.errors.empty()) {
    std::string msg = "invalid config:";
    for (const auto& e : rd.errors) msg += "\n  " + e;
    throw ValidationError(msg);
  }
  return cfg;
}

}  // namespace

void KeyValues::set(const std::string& key, std::string value, int line) {
  entries_[key] = Entry{std::move(value), line};
}

const KeyValues::Entry* KeyValues::find(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

KeyValues parse_key_values(std::istream& in) {
  KeyValues kv;
  std::string section;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) throw ParseError(line_no, "malformed section header '" + line + "'");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError(line_no, "empty key");
    if (section.empty()) throw ParseError(line_no, "key '" + key + "' outside of a [section]");
    const std::string full = section + "." + key;
    if (kv.has(full)) throw ParseError(line_no, "duplicate key '" + full + "'");
    kv.set(full, trim(line.substr(eq + 1)), line_no);
  }
  return kv;
}

bool is_known_key(const std::string& key) {
  const auto [base, component] = split_component(key);
  if (component == -2) return false;
  const Field* f = lookup(base);
  if (!f) return false;
  if (component >= 0) return f->kind == Kind::pair || f->kind == Kind::scalar_or_pair;
  return true;
}

void set_value(KeyValues& kv, const std::string& key, double value) {
  const auto [base, component] = split_component(key);
  if (!is_known_key(key)) throw ValidationError("unknown config key '" + key + "'");
  if (component < 0) {
    kv.set(base, format_number(value));
    return;
  }
  const auto* e = kv.find(base);
  if (!e) throw ValidationError("cannot set component of missing key '" + base + "'");
  auto parts = split(e->value, ',');
  if (parts.size() == 1) parts.push_back(parts[0]);
  if (parts.size() != 2) throw ValidationError("'" + base + "' is not a pair");
  parts[component] = format_number(value);
  kv.set(base, parts[0] + ", " + parts[1], e->line);
}

void apply_override(KeyValues& kv, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ValidationError("--set expects key=value, got '" + assignment + "'");
  const std::string key = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  if (!is_known_key(key)) throw ValidationError("--set: unknown config key '" + key + "'");
  const auto [base, component] = split_component(key);
  if (component >= 0) {
    const auto v = to_double(value);
    if (!v) throw ValidationError("--set: '" + key + "' needs a number");
    set_value(kv, key, *v);
    return;
  }
  kv.set(base, value);
}

std::vector<double> parse_value_list(const std::string& text) {
  const std::string t = trim(text);
  if (t.find(':') != std::string::npos) {
    const auto parts = split(t, ':');
    if (parts.size() != 3) throw std::invalid_argument("expected start:stop:count, got '" + t + "'");
    const auto a = to_double(parts[0]);
    const auto b = to_double(parts[1]);
    const auto c = to_double(parts[2]);
    if (!a || !b || !c || *c < 1 || std::floor(*c) != *c) {
      throw std::invalid_argument("expected start:stop:count, got '" + t + "'");
    }
    const auto count = static_cast<std::size_t>(*c);
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
      out[i] = count == 1 ? *a : *a + (*b - *a) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return out;
  }
  std::vector<double> out;
  for (const auto& part : split(t, ',')) {
    const auto v = to_double(part);
    if (!v) throw std::invalid_argument("not a number '" + part + "'");
    out.push_back(*v);
  }
  return out;
}

RunConfig build_run_config(const KeyValues& kv) { return build(kv, true); }
RunConfig build_run_config_lenient(const KeyValues& kv) { return build(kv, false); }

RunConfig parse_config(std::istream& in) { return build_run_config(parse_key_values(in)); }

RunConfig parse_config(const std::string& path) {
  if (path == "-") return parse_config(std::cin);
  std::ifstream file(path);
  if (!file) throw ParseError(0, "cannot open config file '" + path + "'");
  return parse_config(file);
}

}  // namespace spreadfft
