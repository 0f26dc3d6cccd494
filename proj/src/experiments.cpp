#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include <spdlog/spdlog.h>

#include "gtzw/coupling.hpp"
#include "gtzw/dimension.hpp"
#include "gtzw/errors.hpp"
#include "gtzw/experiments.hpp"
#include "gtzw/fluctuation.hpp"
#include "gtzw/parallel.hpp"
#include "gtzw/special_functions.hpp"

namespace gtzw {

namespace fs = std::filesystem;

void configure_logging_from_env() {
  const char* env = std::getenv("GTZW_LOG");
  if (!env || !*env) {
    spdlog::set_level(spdlog::level::warn);
    return;
  }
  spdlog::set_level(spdlog::level::from_str(env));
}

namespace {

fs::path output_file(const RunConfig& cfg, const std::string& name) {
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec) throw IoError("cannot create output directory '" + cfg.out + "': " + ec.message());
  return fs::path(cfg.out) / name;
}

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + file.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write to '" + file.string() + "' failed");
}

void write_json(const fs::path& file, const nlohmann::json& j) { write_text(file, j.dump(2) + "\n"); }

nlohmann::json header(const RunConfig& cfg) {
  return {{"config", cfg.to_json()}, {"config_hash", cfg.hash()}, {"seed", cfg.seed}};
}

std::string fmt_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

// ---- verify suites ----

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed() const { return residual <= tolerance; }
};

Check check_weyl_vs_paths() {
  double mismatches = 0;
  for (int level = 1; level <= 4; ++level)
    for (const auto& lam : enumerate_signatures(level, -2, 2))
      if (weyl_dimension(lam) != count_paths_to(lam)) ++mismatches;
  return {"weyl_vs_path_count", mismatches, 0.0};
}

Signature random_signature(std::mt19937_64& rng, int level, Row lo, Row hi) {
  std::uniform_int_distribution<Row> row(lo, hi);
  std::vector<Row> r(static_cast<std::size_t>(level));
  for (auto& x : r) x = row(rng);
  std::sort(r.rbegin(), r.rend());
  return Signature(std::move(r));
}

Check check_coherency(const RunConfig& cfg, std::mt19937_64& rng) {
  const ZwParams p = cfg.params();
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const Signature mu = random_signature(rng, 1 + t % 3, -3, 3);
    worst = std::max(worst, coherency_residual(mu, p, cfg.eps_tail));
  }
  return {"coherency", worst, 10.0 * cfg.eps_tail};
}

Check check_gauss_vs_series() {
  const Complex cases[][3] = {{{0.5, 0.0}, {0.5, 0.0}, {3.0, 0.0}},
                              {{0.3, 0.2}, {0.3, -0.2}, {4.5, 0.0}},
                              {{1.2, 0.0}, {1.2, 0.0}, {6.1, 0.3}},
                              {{-0.4, 0.1}, {0.7, 0.0}, {2.9, 0.0}}};
  double worst = 0.0;
  for (const auto& c : cases) {
    const Complex g = gauss_2f1_at_one(c[0], c[1], c[2]);
    const Complex s = series_2f1_at_one(c[0], c[1], c[2]);
    worst = std::max(worst, std::abs(g - s) / std::max(1.0, std::abs(g)));
  }
  return {"gauss_vs_series", worst, 1e-9};
}

Check check_pm_vs_density(const RunConfig& cfg, std::mt19937_64& rng) {
  const ZwParams p = cfg.params();
  double worst = 0.0;
  int done = 0;
  for (int attempt = 0; attempt < 400 && done < 20; ++attempt) {
    const Signature mu = random_signature(rng, 1 + attempt % 4, -2, 3);
    const Row k = attempt % 3;
    const auto box = addable_box_with_content(mu, k);
    if (!box) continue;
    const int i = static_cast<int>(box->row);
    const Row j = box->col;
    // lam: every row at its lowest value, row i at j - 1
    std::vector<Row> r;
    for (int v = 1; v <= mu.level() + 1; ++v) r.push_back(v <= mu.level() ? mu(v) : mu(mu.level()));
    r[static_cast<std::size_t>(i - 1)] = j - 1;
    const Signature lam(r);
    const Row room = i == 1 ? 3 : std::min<Row>(3, mu(i - 1) - (j - 1));
    for (Row m = 1; m <= room; ++m) {
      const double direct =
          std::exp(log_unnormalized_density(lam.with_row(i, j - 1 + m), p) - log_unnormalized_density(lam, p));
      const double closed = p_m_ratio(mu, lam, i, j, m, p);
      worst = std::max(worst, std::abs(closed - direct) / std::max(1e-300, std::abs(direct)));
    }
    ++done;
  }
  return {"p_m_vs_density", worst, 1e-10};
}

Check check_coupling_marginals(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + t % 6;
    BernoulliProduct<double> nu;
    for (int m = 0; m < n; ++m) nu.p.push_back(u(rng));
    FiniteBinaryDistribution<double> mu{n, std::vector<double>(std::size_t(1) << n, 0.0)};
    mu.probs[0] = 1.0;
    for (int m = 1; m <= n; ++m) {
      const Cell bit = Cell(1) << (m - 1);
      for (Cell a = 0; a < bit; ++a) {
        const double q = nu.p[m - 1] * u(rng);
        mu.probs[a | bit] = mu.probs[a] * q;
        mu.probs[a] *= 1.0 - q;
      }
    }
    const auto dense = nu.dense(n);
    const auto eta = build_coupling(mu, dense, n);
    if (!eta.monotone_support()) worst = std::max(worst, 1.0);
    const auto l = eta.left(), r = eta.right();
    for (std::size_t a = 0; a < l.probs.size(); ++a)
      worst = std::max({worst, std::abs(l.probs[a] - mu.probs[a]), std::abs(r.probs[a] - dense.probs[a])});
  }
  return {"coupling_marginals", worst, 1e-12};
}

}  // namespace

// ---- verify ----

CommandResult cmd_verify(const RunConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::vector<Check> checks;
  checks.push_back(check_weyl_vs_paths());
  checks.push_back(check_coherency(cfg, rng));
  checks.push_back(check_gauss_vs_series());
  checks.push_back(check_pm_vs_density(cfg, rng));
  checks.push_back(check_coupling_marginals(rng));

  CommandResult res{kExitOk, header(cfg)};
  nlohmann::json list = nlohmann::json::array();
  std::vector<std::string> failed;
  for (const auto& c : checks) {
    list.push_back({{"name", c.name}, {"passed", c.passed()}, {"residual", c.residual}, {"tolerance", c.tolerance}});
    spdlog::info("verify {}: residual {} (tolerance {})", c.name, c.residual, c.tolerance);
    if (!c.passed()) failed.push_back(c.name);
  }
  res.summary["checks"] = std::move(list);
  res.summary["failed"] = failed;
  res.summary["passed"] = failed.empty();
  if (!failed.empty()) {
    res.exit_code = kExitCheck;
    for (const auto& f : failed) spdlog::error("verify check failed: {}", f);
  }
  write_json(output_file(cfg, "verify.json"), res.summary);
  return res;
}

// ---- sample ----

CommandResult cmd_sample(const RunConfig& cfg) {
  cfg.validate();
  const ZwParams p = cfg.params();
  const SamplerConfig sc = cfg.sampler();
  const std::string hash = cfg.hash();
  const auto checkpoints = growth_checkpoints(cfg.levels);
  std::vector<std::string> lines(static_cast<std::size_t>(cfg.paths));
  std::vector<std::vector<int>> survived(lines.size());
  parallel_for(lines.size(), cfg.workers, [&](std::size_t i) {
    const Path path = sample_path(cfg.levels, p, sc, i);
    auto j = path_to_json(path);
    j["path_id"] = i;
    j["config_hash"] = hash;
    j["seed"] = cfg.seed;
    lines[i] = j.dump();
    if (cfg.hook.t <= cfg.levels) {
      const auto tr = thick_hook_event(path, cfg.hook);
      for (int N : checkpoints) survived[i].push_back(N >= tr.first_level && tr.survives_to(N) ? 1 : 0);
    }
  });
  std::string text;
  for (const auto& l : lines) text += l + "\n";
  const auto file = output_file(cfg, "paths.jsonl");
  write_text(file, text);
  spdlog::info("wrote {} paths to {}", cfg.paths, file.string());

  CommandResult res{kExitOk, header(cfg)};
  res.summary["paths_file"] = file.filename().string();
  nlohmann::json hook = nlohmann::json::array();
  if (!survived.empty() && !survived.front().empty()) {
    for (std::size_t c = 0; c < checkpoints.size(); ++c) {
      if (checkpoints[c] < cfg.hook.t) continue;
      double alive = 0;
      for (const auto& s : survived) alive += s[c];
      hook.push_back({{"level", checkpoints[c]}, {"fraction", alive / double(cfg.paths)}});
    }
  }
  res.summary["hook_survival"] = std::move(hook);
  write_json(output_file(cfg, "sample.json"), res.summary);
  return res;
}

// ---- fluctuation ----

CommandResult cmd_fluctuation(const RunConfig& cfg) {
  cfg.validate();
  const ZwParams p = cfg.params();
  const ZwParams pp = cfg.params_prime();
  const SamplerConfig sc = cfg.sampler();

  SeparatingChoice choice;
  if (!cfg.k || !cfg.delta) {
    try {
      choice = find_separating_k(p, pp);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("cannot choose k and delta automatically (") + e.what() +
                        "); set both explicitly");
    }
  }
  const Row k = cfg.k.value_or(choice.k);
  const double delta = cfg.delta.value_or(choice.delta);
  if (!((Complex(double(k), 0.0) + p.w()).real() > 0.0))
    throw ConfigError("fluctuation needs Re(k + w) > 0, got k = " + std::to_string(k));
  if (!(delta > 0.0))
    throw ConfigError("the two parameter pairs give no separating k; set k and delta explicitly");

  std::vector<int> windows = cfg.windows;
  std::sort(windows.begin(), windows.end());
  windows.erase(std::unique(windows.begin(), windows.end()), windows.end());
  const int top = 2 * windows.back() + 1;

  struct PathOut {
    std::string lines;
    std::vector<int> counts;
    std::vector<int> boxes;
    std::vector<int> admissible;
  };
  std::vector<PathOut> per(static_cast<std::size_t>(cfg.paths));
  parallel_for(per.size(), cfg.workers, [&](std::size_t i) {
    const Path path = sample_path(top, p, sc, i);
    PathOut& o = per[i];
    const auto trace = loglr_trace(path, p, pp);
    nlohmann::json ends = nlohmann::json::array(), values = nlohmann::json::array();
    for (int N : windows) {
      int count = 0;
      for (const auto& r : scan_h(path, p, pp, N, 2 * N, delta)) {
        if (!r.is_fluctuation) continue;
        ++count;
        o.lines += nlohmann::json{{"type", "fluctuation"}, {"path_id", i},        {"window", N},
                                  {"level", r.level},      {"h", r.h},            {"is_fluctuation", true}}
                       .dump() +
                   "\n";
      }
      FluctuationConfig fc{delta, k, 1, {N, 2 * N + 1}};
      int boxes = 0, adm = 0;
      for (const auto& b : admissibility_scan(path, fc)) {
        ++boxes;
        const bool all = std::all_of(b.conditions.begin(), b.conditions.end(), [](bool c) { return c; });
        adm += all;
        o.lines += nlohmann::json{{"type", "box_event"},
                                  {"path_id", i},
                                  {"window", N},
                                  {"level", b.level},
                                  {"box", {b.box.row, b.box.col}},
                                  {"conditions", b.conditions},
                                  {"admissible", all}}
                       .dump() +
                   "\n";
      }
      o.counts.push_back(count);
      o.boxes.push_back(boxes);
      o.admissible.push_back(adm);
      ends.push_back(2 * N);
      values.push_back(trace[static_cast<std::size_t>(2 * N - path.start_level())]);
    }
    o.lines += nlohmann::json{{"type", "loglr"}, {"path_id", i}, {"levels", ends}, {"values", values}}.dump() + "\n";
  });

  std::string text;
  for (const auto& o : per) text += o.lines;
  write_text(output_file(cfg, "fluctuations.jsonl"), text);

  CommandResult res{kExitOk, header(cfg)};
  res.summary["k"] = k;
  res.summary["delta"] = delta;
  res.summary["nu"] = choice.nu;
  res.summary["auto_k"] = !cfg.k.has_value();
  res.summary["auto_delta"] = !cfg.delta.has_value();
  res.summary["level_threshold"] = choice.level_threshold;
  nlohmann::json wins = nlohmann::json::array();
  for (std::size_t w = 0; w < windows.size(); ++w) {
    int with = 0, boxes = 0, adm = 0;
    double total = 0;
    for (const auto& o : per) {
      with += o.counts[w] > 0;
      total += o.counts[w];
      boxes += o.boxes[w];
      adm += o.admissible[w];
    }
    wins.push_back({{"window", {windows[w], 2 * windows[w]}},
                    {"paths_with_fluctuation", with},
                    {"fraction", double(with) / double(cfg.paths)},
                    {"mean_count", total / double(cfg.paths)},
                    {"box_records", boxes},
                    {"admissible_records", adm}});
    spdlog::info("window [{}, {}]: {} of {} paths fluctuate", windows[w], 2 * windows[w], with, cfg.paths);
  }
  res.summary["windows"] = std::move(wins);
  write_json(output_file(cfg, "fluctuation.json"), res.summary);
  return res;
}

// ---- growth ----

CommandResult cmd_growth(const RunConfig& cfg) {
  cfg.validate();
  const ZwParams p = cfg.params();
  const Row k = cfg.k.value_or(2);
  if (!((Complex(double(k), 0.0) + p.w()).real() > 0.0))
    throw ConfigError("growth needs Re(k + w) > 0 so that content-k additions have probability O(1/N); got k = " +
                      std::to_string(k));
  if (k < 0) throw ConfigError("growth needs k >= 0 for the main-diagonal comparison");
  const auto g = growth_experiment(p, k, cfg.levels, cfg.paths, cfg.sampler(), cfg.workers);

  std::string csv = "N,quantile_05,median,quantile_95,mean\n";
  for (const auto& c : g.checkpoints)
    csv += std::to_string(c.level) + "," + fmt_real(c.quantile_05) + "," + fmt_real(c.median) + "," +
           fmt_real(c.quantile_95) + "," + fmt_real(c.mean) + "\n";
  write_text(output_file(cfg, "growth.csv"), csv);

  CommandResult res{kExitOk, header(cfg)};
  res.summary["k"] = k;
  res.summary["c1"] = g.c1;
  res.summary["fit"] = {{"mean_scaled", g.fit.mean_scaled},
                        {"stderr_scaled", g.fit.stderr_scaled},
                        {"samples", g.fit.samples},
                        {"level_lo", g.fit.level_lo},
                        {"level_hi", g.fit.level_hi}};
  res.summary["tilde_violations"] = g.tilde_violations;
  res.summary["level_checks"] = g.level_checks;
  res.summary["median_trend"] = g.median_trend;
  bool dominated = true;
  nlohmann::json cps = nlohmann::json::array();
  for (const auto& c : g.checkpoints) {
    const double sigma = std::sqrt((c.s_stddev * c.s_stddev + c.envelope_variance) / double(cfg.paths));
    const bool ok = c.s_mean <= c.envelope_mean + 3.0 * sigma;
    dominated = dominated && ok;
    cps.push_back({{"level", c.level},
                   {"median", c.median},
                   {"tilde_median", c.tilde_median},
                   {"s_mean", c.s_mean},
                   {"s_stddev", c.s_stddev},
                   {"envelope_mean", c.envelope_mean},
                   {"envelope_variance", c.envelope_variance},
                   {"sigma", sigma},
                   {"envelope_dominated", ok}});
  }
  res.summary["checkpoints"] = std::move(cps);
  res.summary["envelope_dominated"] = dominated;
  write_json(output_file(cfg, "growth.json"), res.summary);
  if (g.tilde_violations > 0 || !dominated) {
    spdlog::error("growth checks failed: {} diagonal violations, envelope dominated = {}", g.tilde_violations,
                  dominated);
    res.exit_code = kExitCheck;
  }
  return res;
}

// ---- coupling ----

namespace {

FiniteBinaryDistribution<double> dense_from(const std::vector<double>& probs, const char* name) {
  const std::size_t size = probs.size();
  if (size < 2 || (size & (size - 1)) != 0)
    throw ConfigError(std::string("coupling.") + name + " must have 2^n entries with n >= 1");
  int n = 0;
  while ((std::size_t(1) << n) < size) ++n;
  if (n > 24) throw ConfigError(std::string("coupling.") + name + " has more than 2^24 entries");
  FiniteBinaryDistribution<double> d{n, probs};
  try {
    d.validate(1e-9);
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("coupling.") + name + ": " + e.what());
  }
  return d;
}

}  // namespace

CommandResult cmd_coupling(const RunConfig& cfg) {
  cfg.validate();
  const auto mu = dense_from(cfg.coupling_mu, "mu");
  const auto nu = dense_from(cfg.coupling_nu, "nu");
  if (mu.n != nu.n) throw ConfigError("coupling.mu and coupling.nu must have the same length");
  const int n = mu.n;

  CommandResult res{kExitOk, header(cfg)};
  res.summary["n"] = n;
  CouplingTable<double> eta;
  try {
    eta = build_coupling(mu, nu, n);
  } catch (const HypothesisViolation& e) {
    spdlog::error("{}", e.what());
    res.summary["hypothesis_violation"] = {{"history", e.history()}, {"message", e.what()}};
    res.exit_code = kExitCheck;
    write_json(output_file(cfg, "coupling.json"), res.summary);
    return res;
  }
  const auto l = eta.left(), r = eta.right();
  double residual = 0.0;
  for (std::size_t a = 0; a < l.probs.size(); ++a)
    residual = std::max({residual, std::abs(l.probs[a] - mu.probs[a]), std::abs(r.probs[a] - nu.probs[a])});
  nlohmann::json checks = {{"marginal_residual", residual},
                           {"marginals_ok", residual <= 1e-12},
                           {"monotone_support", eta.monotone_support()}};
  if (n <= 4) checks["upset_bruteforce"] = stochastic_order_bruteforce(mu, nu);
  res.summary["mass"] = coupling_to_json(eta);
  res.summary["checks"] = checks;
  const bool ok = residual <= 1e-12 && eta.monotone_support() && (n > 4 || checks["upset_bruteforce"].get<bool>());
  if (!ok) res.exit_code = kExitCheck;
  write_json(output_file(cfg, "coupling.json"), res.summary);
  return res;
}

}  // namespace gtzw
