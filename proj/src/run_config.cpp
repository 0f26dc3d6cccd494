#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "gtzw/errors.hpp"
#include "gtzw/experiments.hpp"

namespace gtzw {

namespace {

std::string where(const toml::node& n) {
  const auto& src = n.source();
  return " (line " + std::to_string(src.begin.line) + ")";
}

double as_real(const toml::node& n, const std::string& key) {
  if (auto v = n.value<double>()) return *v;
  throw ConfigError("'" + key + "' must be a number" + where(n));
}

Complex as_complex(const toml::node& n, const std::string& key) {
  if (const auto* arr = n.as_array()) {
    if (arr->size() != 2) throw ConfigError("'" + key + "' must be a number or [re, im]" + where(n));
    return {as_real(*arr->get(0), key), as_real(*arr->get(1), key)};
  }
  return {as_real(n, key), 0.0};
}

std::int64_t as_int(const toml::node& n, const std::string& key) {
  if (auto v = n.value_exact<std::int64_t>()) return *v;
  throw ConfigError("'" + key + "' must be an integer" + where(n));
}

int as_small_int(const toml::node& n, const std::string& key) {
  const auto v = as_int(n, key);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    throw ConfigError("'" + key + "' is out of range" + where(n));
  return static_cast<int>(v);
}

std::vector<double> as_reals(const toml::node& n, const std::string& key) {
  const auto* arr = n.as_array();
  if (!arr) throw ConfigError("'" + key + "' must be an array of numbers" + where(n));
  std::vector<double> out;
  for (const auto& e : *arr) out.push_back(as_real(e, key));
  return out;
}

const toml::table& as_table(const toml::node& n, const std::string& key) {
  if (const auto* t = n.as_table()) return *t;
  throw ConfigError("'" + key + "' must be a table" + where(n));
}

void reject_unknown(const toml::table& t, const std::set<std::string>& known, const std::string& prefix) {
  for (const auto& [k, v] : t)
    if (!known.count(std::string(k.str()))) throw ConfigError("unknown key '" + prefix + std::string(k.str()) + "'");
}

nlohmann::json complex_json(Complex c) { return nlohmann::json::array({c.real(), c.imag()}); }

}  // namespace

void RunConfig::validate() const {
  if (auto why = ZwParams::check(z, w)) throw ConfigError("params: " + *why);
  if (zp || wp) {
    if (auto why = ZwParams::check(zp.value_or(z), wp.value_or(w))) throw ConfigError("params_prime: " + *why);
  }
  if (levels < 1) throw ConfigError("levels must be at least 1");
  if (paths < 1) throw ConfigError("paths must be at least 1");
  if (delta && !(*delta > 0.0)) throw ConfigError("delta must be positive");
  if (!(eps_tail > 0.0 && eps_tail < 1.0)) throw ConfigError("eps_tail must lie in (0, 1)");
  if (gibbs_sweeps < 1) throw ConfigError("gibbs_sweeps must be at least 1");
  if (burn_in < 0) throw ConfigError("burn_in must be non-negative");
  if (workers < 1) throw ConfigError("workers must be at least 1");
  if (windows.empty()) throw ConfigError("windows must not be empty");
  for (int n : windows)
    if (n < 1) throw ConfigError("windows must be positive levels");
  if (hook.i < 1 || hook.j < 1 || hook.l < 0 || hook.t < 1)
    throw ConfigError("hook needs i, j, t >= 1 and l >= 0");
  if (out.empty()) throw ConfigError("out must not be empty");
}

ZwParams RunConfig::params() const {
  if (auto why = ZwParams::check(z, w)) throw ConfigError("params: " + *why);
  return ZwParams(z, w);
}

ZwParams RunConfig::params_prime() const {
  if (!zp || !wp) throw ConfigError("both zp and wp must be set");
  if (auto why = ZwParams::check(*zp, *wp)) throw ConfigError("params_prime: " + *why);
  return ZwParams(*zp, *wp);
}

SamplerConfig RunConfig::sampler() const {
  SamplerConfig s;
  s.eps_tail = eps_tail;
  s.mode = mode;
  s.gibbs_sweeps = gibbs_sweeps;
  s.burn_in = burn_in;
  s.seed = seed;
  return s;
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["params"] = {{"z", complex_json(z)}, {"w", complex_json(w)}};
  if (zp) j["params"]["zp"] = complex_json(*zp);
  if (wp) j["params"]["wp"] = complex_json(*wp);
  j["levels"] = levels;
  j["paths"] = paths;
  j["k"] = k ? nlohmann::json(*k) : nlohmann::json(nullptr);
  j["delta"] = delta ? nlohmann::json(*delta) : nlohmann::json(nullptr);
  j["eps_tail"] = eps_tail;
  j["mode"] = mode == SamplerMode::gibbs ? "gibbs" : "exact";
  j["gibbs_sweeps"] = gibbs_sweeps;
  j["burn_in"] = burn_in;
  j["windows"] = windows;
  j["hook"] = {{"i", hook.i}, {"j", hook.j}, {"l", hook.l}, {"m", hook.m}, {"t", hook.t}};
  j["coupling"] = {{"mu", coupling_mu}, {"nu", coupling_nu}};
  j["seed"] = seed;
  j["workers"] = workers;
  j["out"] = out;
  return j;
}

std::string RunConfig::hash() const {
  // workers and out do not change any result
  auto j = to_json();
  j.erase("workers");
  j.erase("out");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunConfig config_from_toml(std::string_view text) {
  toml::table root;
  try {
    root = toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "config does not parse: " << e.description() << " (line " << e.source().begin.line << ")";
    throw ConfigError(msg.str());
  }
  reject_unknown(root,
                 {"params", "levels", "paths", "k", "delta", "eps_tail", "mode", "gibbs_sweeps", "burn_in", "windows",
                  "hook", "coupling", "seed", "workers", "out"},
                 "");
  RunConfig cfg;
  if (const auto* p = root.get("params")) {
    const auto& t = as_table(*p, "params");
    reject_unknown(t, {"z", "w", "zp", "wp"}, "params.");
    if (const auto* n = t.get("z")) cfg.z = as_complex(*n, "params.z");
    if (const auto* n = t.get("w")) cfg.w = as_complex(*n, "params.w");
    if (const auto* n = t.get("zp")) cfg.zp = as_complex(*n, "params.zp");
    if (const auto* n = t.get("wp")) cfg.wp = as_complex(*n, "params.wp");
  }
  if (const auto* n = root.get("levels")) cfg.levels = as_small_int(*n, "levels");
  if (const auto* n = root.get("paths")) cfg.paths = as_small_int(*n, "paths");
  if (const auto* n = root.get("k")) cfg.k = as_int(*n, "k");
  if (const auto* n = root.get("delta")) cfg.delta = as_real(*n, "delta");
  if (const auto* n = root.get("eps_tail")) cfg.eps_tail = as_real(*n, "eps_tail");
  if (const auto* n = root.get("mode")) {
    const auto v = n->value<std::string>();
    if (v == "gibbs")
      cfg.mode = SamplerMode::gibbs;
    else if (v == "exact")
      cfg.mode = SamplerMode::exact_enumeration;
    else
      throw ConfigError("mode must be \"gibbs\" or \"exact\"" + where(*n));
  }
  if (const auto* n = root.get("gibbs_sweeps")) cfg.gibbs_sweeps = as_small_int(*n, "gibbs_sweeps");
  if (const auto* n = root.get("burn_in")) cfg.burn_in = as_small_int(*n, "burn_in");
  if (const auto* n = root.get("windows")) {
    cfg.windows.clear();
    const auto* arr = n->as_array();
    if (!arr) throw ConfigError("'windows' must be an array of integers" + where(*n));
    for (const auto& e : *arr) cfg.windows.push_back(as_small_int(e, "windows"));
  }
  if (const auto* h = root.get("hook")) {
    const auto& t = as_table(*h, "hook");
    reject_unknown(t, {"i", "j", "l", "m", "t"}, "hook.");
    if (const auto* n = t.get("i")) cfg.hook.i = as_small_int(*n, "hook.i");
    if (const auto* n = t.get("j")) cfg.hook.j = as_int(*n, "hook.j");
    if (const auto* n = t.get("l")) cfg.hook.l = as_small_int(*n, "hook.l");
    if (const auto* n = t.get("m")) cfg.hook.m = as_int(*n, "hook.m");
    if (const auto* n = t.get("t")) cfg.hook.t = as_small_int(*n, "hook.t");
  }
  if (const auto* c = root.get("coupling")) {
    const auto& t = as_table(*c, "coupling");
    reject_unknown(t, {"mu", "nu"}, "coupling.");
    if (const auto* n = t.get("mu")) cfg.coupling_mu = as_reals(*n, "coupling.mu");
    if (const auto* n = t.get("nu")) cfg.coupling_nu = as_reals(*n, "coupling.nu");
  }
  if (const auto* n = root.get("seed")) {
    const auto v = as_int(*n, "seed");
    if (v < 0) throw ConfigError("seed must be non-negative" + where(*n));
    cfg.seed = static_cast<std::uint64_t>(v);
  }
  if (const auto* n = root.get("workers")) cfg.workers = as_small_int(*n, "workers");
  if (const auto* n = root.get("out")) {
    const auto v = n->value<std::string>();
    if (!v) throw ConfigError("'out' must be a string" + where(*n));
    cfg.out = *v;
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_toml(buf.str());
}

}  // namespace gtzw
