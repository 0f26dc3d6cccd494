#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "gtzw/errors.hpp"
#include "gtzw/experiments.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers, levels, paths, gibbs_sweeps;
  std::optional<std::string> out;
  std::optional<double> z, w, zp, wp, delta, eps_tail;
  std::optional<std::int64_t> k;
};

gtzw::RunConfig effective_config(const Overrides& o) {
  gtzw::RunConfig cfg = o.config.empty() ? gtzw::RunConfig{} : gtzw::load_config(o.config);
  if (o.seed) cfg.seed = *o.seed;
  if (o.workers) cfg.workers = *o.workers;
  if (o.levels) cfg.levels = *o.levels;
  if (o.paths) cfg.paths = *o.paths;
  if (o.gibbs_sweeps) cfg.gibbs_sweeps = *o.gibbs_sweeps;
  if (o.out) cfg.out = *o.out;
  // real flags replace the real part only; imaginary parts come from the file
  if (o.z) cfg.z = {*o.z, cfg.z.imag()};
  if (o.w) cfg.w = {*o.w, cfg.w.imag()};
  if (o.zp) cfg.zp = gtzw::Complex(*o.zp, cfg.zp ? cfg.zp->imag() : 0.0);
  if (o.wp) cfg.wp = gtzw::Complex(*o.wp, cfg.wp ? cfg.wp->imag() : 0.0);
  if (o.delta) cfg.delta = *o.delta;
  if (o.eps_tail) cfg.eps_tail = *o.eps_tail;
  if (o.k) cfg.k = *o.k;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  gtzw::configure_logging_from_env();
  CLI::App app{"Sampling and diagnostics for zw-measures on the Gelfand-Tsetlin graph"};
  app.require_subcommand(1);
  Overrides o;
  app.add_option("--config", o.config, "TOML configuration file")->check(CLI::ExistingFile);
  app.add_option("--seed", o.seed, "64-bit seed");
  app.add_option("--workers", o.workers, "worker threads");
  app.add_option("--out", o.out, "output directory");
  app.add_option("--z", o.z, "real part of z");
  app.add_option("--w", o.w, "real part of w");
  app.add_option("--zp", o.zp, "real part of z'");
  app.add_option("--wp", o.wp, "real part of w'");
  app.add_option("--k", o.k, "content of the tracked diagonal");
  app.add_option("--delta", o.delta, "fluctuation threshold");
  app.add_option("--levels", o.levels, "number of levels");
  app.add_option("--paths", o.paths, "number of paths");
  app.add_option("--eps-tail", o.eps_tail, "neglected tail mass per transition");
  app.add_option("--gibbs-sweeps", o.gibbs_sweeps, "recorded Gibbs sweeps per level");

  using Command = gtzw::CommandResult (*)(const gtzw::RunConfig&);
  Command command = nullptr;
  const std::pair<const char*, Command> table[] = {
      {"verify", gtzw::cmd_verify},           {"sample", gtzw::cmd_sample},
      {"fluctuation", gtzw::cmd_fluctuation}, {"growth", gtzw::cmd_growth},
      {"coupling", gtzw::cmd_coupling}};
  const char* help[] = {"run the oracle suites", "sample paths to JSON lines", "scan for likelihood-ratio fluctuations",
                        "diagonal growth quantiles", "build a monotone coupling"};
  for (std::size_t c = 0; c < std::size(table); ++c)
    app.add_subcommand(table[c].first, help[c])->fallthrough()->callback([&command, &table, c] {
      command = table[c].second;
    });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? gtzw::kExitOk : gtzw::kExitConfig;
  }

  try {
    const auto cfg = effective_config(o);
    const auto res = command(cfg);
    std::cout << res.summary.dump(2) << "\n";
    return res.exit_code;
  } catch (const gtzw::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return gtzw::kExitConfig;
  } catch (const gtzw::ArgumentError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return gtzw::kExitConfig;
  } catch (const gtzw::DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return gtzw::kExitConfig;
  } catch (const gtzw::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return gtzw::kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
