#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gtzw/coupling.hpp"
#include "gtzw/diagonal_growth.hpp"
#include "gtzw/dimension.hpp"
#include "gtzw/errors.hpp"
#include "gtzw/experiments.hpp"
#include "gtzw/fluctuation.hpp"
#include "gtzw/special_functions.hpp"
#include "gtzw/zw_measure.hpp"

namespace py = pybind11;
using namespace gtzw;

namespace {

using Rows = std::vector<Row>;

Signature sig(const Rows& r) { return Signature(r); }

py::object big(const BigInt& v) { return py::module_::import("builtins").attr("int")(v.str()); }

Path path_of(const std::vector<Rows>& levels, int start) {
  std::vector<Signature> s;
  for (const auto& r : levels) s.emplace_back(r);
  return Path(start, std::move(s));
}

std::vector<Rows> rows_of(const Path& p) {
  std::vector<Rows> out;
  for (const auto& s : p.signatures()) out.push_back(s.vec());
  return out;
}

SamplerConfig sampler(std::uint64_t seed, const std::string& mode, double eps_tail, int sweeps, int burn_in) {
  SamplerConfig c;
  c.seed = seed;
  c.eps_tail = eps_tail;
  c.gibbs_sweeps = sweeps;
  c.burn_in = burn_in;
  if (mode == "gibbs")
    c.mode = SamplerMode::gibbs;
  else if (mode == "exact")
    c.mode = SamplerMode::exact_enumeration;
  else
    throw ArgumentError("mode must be 'gibbs' or 'exact'");
  return c;
}

py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

RunConfig config_of(const py::dict& d) {
  const std::string text = py::str(py::module_::import("json").attr("dumps")(d));
  const auto j = nlohmann::json::parse(text);
  RunConfig cfg;
  // accept the same keys as the TOML file, flattened
  auto cplx = [](const nlohmann::json& v) {
    return v.is_array() ? Complex(v.at(0).get<double>(), v.at(1).get<double>()) : Complex(v.get<double>(), 0.0);
  };
  for (const auto& [key, v] : j.items()) {
    if (key == "z") cfg.z = cplx(v);
    else if (key == "w") cfg.w = cplx(v);
    else if (key == "zp") cfg.zp = cplx(v);
    else if (key == "wp") cfg.wp = cplx(v);
    else if (key == "levels") cfg.levels = v.get<int>();
    else if (key == "paths") cfg.paths = v.get<int>();
    else if (key == "k") cfg.k = v.get<Row>();
    else if (key == "delta") cfg.delta = v.get<double>();
    else if (key == "eps_tail") cfg.eps_tail = v.get<double>();
    else if (key == "gibbs_sweeps") cfg.gibbs_sweeps = v.get<int>();
    else if (key == "burn_in") cfg.burn_in = v.get<int>();
    else if (key == "windows") cfg.windows = v.get<std::vector<int>>();
    else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
    else if (key == "workers") cfg.workers = v.get<int>();
    else if (key == "out") cfg.out = v.get<std::string>();
    else if (key == "mu") cfg.coupling_mu = v.get<std::vector<double>>();
    else if (key == "nu") cfg.coupling_nu = v.get<std::vector<double>>();
    else if (key == "mode") cfg.mode = v.get<std::string>() == "exact" ? SamplerMode::exact_enumeration : SamplerMode::gibbs;
    else throw ConfigError("unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "zw-measures on the Gelfand-Tsetlin graph";

  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<HypothesisViolation>(m, "HypothesisViolation", PyExc_ArithmeticError);

  py::class_<ZwParams>(m, "Params")
      .def(py::init<Complex, Complex>(), py::arg("z"), py::arg("w"))
      .def_property_readonly("z", &ZwParams::z)
      .def_property_readonly("w", &ZwParams::w)
      .def("__repr__", [](const ZwParams& p) {
        return "Params(z=" + std::string(py::str(py::cast(p.z()))) + ", w=" + std::string(py::str(py::cast(p.w()))) +
               ")";
      });

  // combinatorics
  m.def("weyl_dimension", [](const Rows& r) { return big(weyl_dimension(sig(r))); });
  m.def("count_paths_to", [](const Rows& r) { return big(count_paths_to(sig(r))); });
  m.def("interlaces", [](const Rows& mu, const Rows& lam) { return interlaces(sig(mu), sig(lam)); });
  m.def("diagonal_length", &diagonal_length, py::arg("lam_plus"), py::arg("k"));
  m.def("enumerate_extensions", [](const Rows& mu, Row top, Row bottom) {
    std::vector<Rows> out;
    for (const auto& s : enumerate_extensions(sig(mu), top, bottom)) out.push_back(s.vec());
    return out;
  });

  // special functions
  m.def("log_gamma", &log_gamma_complex);
  m.def("gauss_2f1_at_one", &gauss_2f1_at_one);
  m.def("series_2f1_at_one", &series_2f1_at_one, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("tol") = 1e-12);

  // measure
  m.def("log_unnormalized_density", [](const Rows& r, const ZwParams& p) { return log_unnormalized_density(sig(r), p); });
  m.def("log_normalizer_ratio", &log_normalizer_ratio, py::arg("level"), py::arg("params"), py::arg("eps_tail") = 1e-13);
  m.def(
      "transition_distribution",
      [](const Rows& mu, const ZwParams& p, double eps) {
        SamplerConfig c;
        c.eps_tail = eps;
        c.mode = SamplerMode::exact_enumeration;
        return to_python(transition_to_json(transition_distribution(sig(mu), p, c)));
      },
      py::arg("mu"), py::arg("params"), py::arg("eps_tail") = 1e-8);
  m.def(
      "coherency_residual", [](const Rows& mu, const ZwParams& p, double eps) { return coherency_residual(sig(mu), p, eps); },
      py::arg("mu"), py::arg("params"), py::arg("eps_tail") = 1e-12);
  m.def(
      "sample_path",
      [](int levels, const ZwParams& p, std::uint64_t seed, std::uint64_t index, const std::string& mode, double eps,
         int sweeps, int burn_in) {
        py::gil_scoped_release release;
        return rows_of(sample_path(levels, p, sampler(seed, mode, eps, sweeps, burn_in), index));
      },
      py::arg("levels"), py::arg("params"), py::arg("seed") = 1, py::arg("path_index") = 0, py::arg("mode") = "gibbs",
      py::arg("eps_tail") = 1e-6, py::arg("gibbs_sweeps") = 2, py::arg("burn_in") = 2);
  m.def("p_m_ratio", [](const Rows& mu, const Rows& lam, int i, Row j, Row mm, const ZwParams& p) {
    return p_m_ratio(sig(mu), sig(lam), i, j, mm, p);
  });

  // fluctuations
  m.def("multiplier_star", &multiplier_star, py::arg("params"), py::arg("params_prime"), py::arg("k"), py::arg("n"));
  m.def(
      "h_statistic",
      [](const std::vector<Rows>& path, int level, const ZwParams& p, const ZwParams& pp, int start) {
        return h_statistic(path_of(path, start), level, p, pp);
      },
      py::arg("path"), py::arg("level"), py::arg("params"), py::arg("params_prime"), py::arg("start_level") = 1);
  m.def("find_separating_k", [](const ZwParams& p, const ZwParams& pp) {
    const auto c = find_separating_k(p, pp);
    return py::dict(py::arg("k") = c.k, py::arg("nu") = c.nu, py::arg("delta") = c.delta,
                    py::arg("level_threshold") = c.level_threshold);
  });

  // diagonal growth
  m.def("xi_indicators", [](const std::vector<Rows>& path, Row k) { return xi_indicators(path_of(path, 1), k); });
  m.def("conditional_add_probability",
        [](const Rows& mu, Row k, const ZwParams& p, double eps) { return conditional_add_probability(sig(mu), k, p, eps); },
        py::arg("mu"), py::arg("k"), py::arg("params"), py::arg("eps_tail") = 1e-10);
  m.def("hook_escape_ratio", [](const Rows& lam, int i, const ZwParams& p) { return hook_escape_ratio(sig(lam), i, p); });
  m.def("abel_weighted_limit", &abel_weighted_limit);
  m.def("bernoulli_envelope", [](double c1, int n) { return bernoulli_envelope(c1, n).p; });

  // coupling
  m.def("build_coupling", [](const std::vector<double>& mu, const std::vector<double>& nu) {
    int n = 0;
    while ((std::size_t(1) << n) < mu.size()) ++n;
    FiniteBinaryDistribution<double> a{n, mu}, b{n, nu};
    a.validate(1e-9);
    b.validate(1e-9);
    return to_python(coupling_to_json(build_coupling(a, b, n)));
  });

  // experiment commands; config keys as in the TOML file, with params flattened
  auto command = [&m](const char* name, CommandResult (*fn)(const RunConfig&)) {
    m.def(name, [fn](const py::dict& cfg) {
      const RunConfig rc = config_of(cfg);
      CommandResult res;
      {
        py::gil_scoped_release release;
        res = fn(rc);
      }
      return py::make_tuple(res.exit_code, to_python(res.summary));
    });
  };
  command("run_verify", cmd_verify);
  command("run_sample", cmd_sample);
  command("run_fluctuation", cmd_fluctuation);
  command("run_growth", cmd_growth);
  command("run_coupling", cmd_coupling);
}
