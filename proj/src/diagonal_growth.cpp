#include "gtzw/diagonal_growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "gtzw/dimension.hpp"
#include "gtzw/errors.hpp"
#include "gtzw/gibbs.hpp"
#include "gtzw/parallel.hpp"
#include "gtzw/rng.hpp"

namespace gtzw {

// ---- diagonal traces ----

std::vector<int> xi_indicators(const Path& path, Row k) { return growth_trace(path, k).xi; }

GrowthTrace growth_trace(const Path& path, Row k) {
  if (path.start_level() != 1) throw ArgumentError("growth_trace: path must start at level 1");
  GrowthTrace tr;
  tr.k = k;
  Row prev = 0;
  for (const auto& sig : path.signatures()) {
    const Partition plus = positive_part(sig);
    const Row s = diagonal_length(plus, k);
    // a horizontal strip adds at most one cell per content
    tr.xi.push_back(static_cast<int>(s - prev));
    tr.s.push_back(s);
    tr.tilde_s.push_back(diagonal_length(plus, 0));
    prev = s;
  }
  return tr;
}

// ---- conditional addition probabilities ----

namespace {

RowFloor floor_for(const Box& b) { return RowFloor{static_cast<int>(b.row), b.col}; }

}  // namespace

double conditional_add_probability(const Signature& mu, Row k, const ZwParams& params, double eps_tail) {
  const auto box = addable_box_with_content(mu, k);
  if (!box) return 0.0;
  const RowFloor f = floor_for(*box);
  return std::exp(log_extension_probability(mu, params, std::span<const RowFloor>(&f, 1), eps_tail));
}

double conditional_add_probability_given_previous(const Signature& mu, Row k, const ZwParams& params,
                                                  double eps_tail) {
  const auto box = addable_box_with_content(mu, k);
  const auto prev = addable_box_with_content(mu, k - 1);
  if (!box || !prev) return 0.0;
  const RowFloor both[2] = {floor_for(*box), floor_for(*prev)};
  const double log_prev = log_extension_probability(mu, params, std::span<const RowFloor>(both + 1, 1), eps_tail);
  if (log_prev == -std::numeric_limits<double>::infinity()) return 0.0;
  const double log_both = log_extension_probability(mu, params, both, eps_tail);
  return std::min(1.0, std::exp(log_both - log_prev));
}

namespace {

// Walks one path level by level. on_level(N, tau) is called for every level;
// on_q(N, q) for N in [q_lo, q_hi] once level N + 1 has been drawn, with q the
// estimated addition probability given tau(N).
template <class OnLevel, class OnQ>
void walk_path(const ZwParams& params, Row k, int n_levels, const SamplerConfig& cfg, std::uint64_t path,
               const LevelOneLaw& law, int q_lo, int q_hi, OnLevel&& on_level, OnQ&& on_q) {
  auto rng1 = StreamRng::for_stream(cfg.seed, path, 1);
  Signature tau = sample_level_one(law, rng1);
  on_level(1, tau);
  for (int level = 2; level <= n_levels; ++level) {
    const int N = level - 1;
    auto rng = StreamRng::for_stream(cfg.seed, path, static_cast<std::uint64_t>(level));
    const bool want_q = N >= q_lo && N <= q_hi;
    double q = 0.0;
    Signature next;
    if (cfg.mode == SamplerMode::gibbs) {
      const auto box = want_q ? addable_box_with_content(tau, k) : std::nullopt;
      if (box) {
        RowProbe probe{static_cast<int>(box->row), box->col, 0.0, 0};
        next = gibbs_sample_level(tau, params, cfg, rng, &probe);
        q = probe.mean;
      } else {
        next = gibbs_sample_level(tau, params, cfg, rng);
      }
    } else {
      if (want_q) q = conditional_add_probability(tau, k, params, cfg.eps_tail);
      next = sample_level(tau, params, cfg, rng);
    }
    if (want_q) on_q(N, q);
    tau = std::move(next);
    on_level(level, tau);
  }
}

struct ScaledStats {
  double max = 0.0;
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t count = 0;
  std::uint64_t informative = 0;

  void add(int N, double q) {
    const double v = double(N) * q;
    max = std::max(max, v);
    sum += v;
    sum_sq += v * v;
    ++count;
    if (q > 0.0) ++informative;
  }
  void merge(const ScaledStats& o) {
    max = std::max(max, o.max);
    sum += o.sum;
    sum_sq += o.sum_sq;
    count += o.count;
    informative += o.informative;
  }
};

C1Fit finish_fit(const ScaledStats& st, int lo, int hi) {
  C1Fit fit;
  fit.c1 = st.max;
  fit.samples = st.count;
  fit.level_lo = lo;
  fit.level_hi = hi;
  if (st.count > 0) {
    fit.mean_scaled = st.sum / double(st.count);
    if (st.count > 1) {
      const double var = std::max(0.0, (st.sum_sq - double(st.count) * fit.mean_scaled * fit.mean_scaled) /
                                           double(st.count - 1));
      fit.stderr_scaled = std::sqrt(var / double(st.count));
    }
  }
  return fit;
}

}  // namespace

C1Fit fit_c1(const ZwParams& params, Row k, int level_lo, int level_hi, int n_paths, const SamplerConfig& cfg,
             int workers) {
  cfg.validate();
  if (level_lo < 1 || level_hi < level_lo) throw ArgumentError("fit_c1: invalid level range");
  if (n_paths < 1) throw ArgumentError("fit_c1: n_paths must be positive");
  const auto law = level_one_law(params, cfg.eps_tail);
  std::vector<ScaledStats> per(static_cast<std::size_t>(n_paths));
  parallel_for(per.size(), workers, [&](std::size_t p) {
    walk_path(params, k, level_hi + 1, cfg, p, law, level_lo, level_hi, [](int, const Signature&) {},
              [&](int N, double q) { per[p].add(N, q); });
  });
  ScaledStats total;
  for (const auto& s : per) total.merge(s);
  // every estimate exactly zero: the probability vanishes on the range
  if (total.informative == 0) return finish_fit(total, level_lo, level_hi);
  if (total.informative < 10)
    throw StatisticalError("fit_c1: only " + std::to_string(total.informative) + " informative samples");
  return finish_fit(total, level_lo, level_hi);
}

double exact_c1(const ZwParams& params, Row k, int max_level, Row lo, Row hi, double eps_tail) {
  if (max_level < 1 || lo > hi) throw ArgumentError("exact_c1: invalid range");
  double best = 0.0;
  for (int N = 1; N <= max_level; ++N)
    for (const auto& mu : enumerate_signatures(N, lo, hi))
      best = std::max(best, double(N) * conditional_add_probability(mu, k, params, eps_tail));
  return best;
}

BernoulliProduct<double> bernoulli_envelope(double c1, int n_levels) {
  if (!(c1 >= 0.0)) throw ArgumentError("bernoulli_envelope: c1 must be non-negative");
  if (n_levels < 0) throw ArgumentError("bernoulli_envelope: n_levels must be non-negative");
  BernoulliProduct<double> out;
  for (int N = 1; N <= n_levels; ++N) out.p.push_back(std::min(1.0, c1 / double(N)));
  return out;
}

XiLaw exact_xi_law(const ZwParams& params, Row k, int n, double eps_tail, double prune) {
  if (n < 1 || n > kMaxDenseCoordinates) throw ArgumentError("exact_xi_law: n out of range");
  SamplerConfig cfg;
  cfg.eps_tail = eps_tail;
  cfg.mode = SamplerMode::exact_enumeration;
  XiLaw out;
  out.law = FiniteBinaryDistribution<double>{n, std::vector<double>(std::size_t(1) << n, 0.0)};

  using State = std::pair<Signature, Cell>;
  std::map<State, double> states;
  const auto law = level_one_law(params, eps_tail);
  for (std::size_t x = 0; x < law.probs.size(); ++x) {
    const double p = law.probs[x];
    if (p < prune) {
      out.dropped_mass += p;
      continue;
    }
    const Signature sig{law.lo + static_cast<Row>(x)};
    const Cell bits = diagonal_length(positive_part(sig), k) > 0 ? 1u : 0u;
    states[{sig, bits}] += p;
  }

  for (int level = 2; level <= n; ++level) {
    std::map<State, double> next;
    for (const auto& [state, mass] : states) {
      const auto& [mu, bits] = state;
      const auto tr = transition_distribution(mu, params, cfg);
      const Row s_prev = diagonal_length(positive_part(mu), k);
      for (std::size_t a = 0; a < tr.support.size(); ++a) {
        const double m = mass * std::exp(tr.log_probs[a]);
        if (m < prune) {
          out.dropped_mass += m;
          continue;
        }
        const bool added = diagonal_length(positive_part(tr.support[a]), k) > s_prev;
        next[{tr.support[a], bits | (added ? Cell(1) << (level - 1) : 0u)}] += m;
      }
    }
    states = std::move(next);
  }
  for (const auto& [state, mass] : states) out.law.probs[state.second] += mass;
  return out;
}

// ---- growth experiment ----

std::vector<int> growth_checkpoints(int n_levels) {
  std::vector<int> out;
  for (int N = n_levels; N >= 2; N /= 2) out.push_back(N);
  std::reverse(out.begin(), out.end());
  return out;
}

namespace {

// Linear interpolation between order statistics.
double quantile(std::vector<double> v, double q) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const double h = q * double(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - double(lo)) * (v[hi] - v[lo]);
}

struct PathGrowth {
  std::vector<Row> s_at;
  std::vector<Row> tilde_at;
  ScaledStats all;
  ScaledStats late;
  std::uint64_t violations = 0;
  std::uint64_t checks = 0;
};

}  // namespace

GrowthResult growth_experiment(const ZwParams& params, Row k, int n_levels, int n_paths, const SamplerConfig& cfg,
                               int workers) {
  cfg.validate();
  if (n_levels < 1) throw ArgumentError("growth_experiment: n_levels must be at least 1");
  if (n_paths < 1) throw ArgumentError("growth_experiment: n_paths must be positive");
  const auto checkpoints = growth_checkpoints(n_levels);
  const auto law = level_one_law(params, cfg.eps_tail);
  const int late_lo = std::max(1, n_levels / 2);

  std::vector<PathGrowth> per(static_cast<std::size_t>(n_paths));
  parallel_for(per.size(), workers, [&](std::size_t p) {
    PathGrowth& g = per[p];
    std::size_t next_cp = 0;
    walk_path(
        params, k, n_levels, cfg, p, law, 1, n_levels - 1,
        [&](int level, const Signature& tau) {
          const Partition plus = positive_part(tau);
          const Row s = diagonal_length(plus, k);
          const Row tilde = diagonal_length(plus, 0);
          if (k >= 0) {
            ++g.checks;
            if (tilde > s + k) ++g.violations;
          }
          if (next_cp < checkpoints.size() && checkpoints[next_cp] == level) {
            g.s_at.push_back(s);
            g.tilde_at.push_back(tilde);
            ++next_cp;
          }
        },
        [&](int N, double q) {
          g.all.add(N, q);
          if (N >= late_lo) g.late.add(N, q);
        });
  });

  GrowthResult res;
  res.k = k;
  res.n_levels = n_levels;
  res.n_paths = n_paths;
  res.seed = cfg.seed;
  ScaledStats all, late;
  for (const auto& g : per) {
    all.merge(g.all);
    late.merge(g.late);
    res.tilde_violations += g.violations;
    res.level_checks += g.checks;
  }
  res.c1 = all.max;
  res.fit = finish_fit(late, late_lo, std::max(late_lo, n_levels - 1));
  res.fit.c1 = all.max;

  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    const int N = checkpoints[c];
    const double logn = std::log(double(N));
    std::vector<double> ratio, tilde_ratio;
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& g : per) {
      const double s = double(g.s_at[c]);
      ratio.push_back(s / logn);
      tilde_ratio.push_back(double(g.tilde_at[c]) / logn);
      sum += s;
      sum_sq += s * s;
    }
    CheckpointStats cs;
    cs.level = N;
    cs.quantile_05 = quantile(ratio, 0.05);
    cs.median = quantile(ratio, 0.5);
    cs.quantile_95 = quantile(ratio, 0.95);
    cs.tilde_median = quantile(tilde_ratio, 0.5);
    cs.s_mean = sum / double(n_paths);
    cs.mean = cs.s_mean / logn;
    cs.s_stddev = n_paths > 1 ? std::sqrt(std::max(0.0, (sum_sq - double(n_paths) * cs.s_mean * cs.s_mean) /
                                                            double(n_paths - 1)))
                              : 0.0;
    for (int i = 1; i <= N; ++i) {
      const double p = std::min(1.0, res.c1 / double(i));
      cs.envelope_mean += p;
      cs.envelope_variance += p * (1.0 - p);
    }
    res.checkpoints.push_back(cs);
  }

  // least-squares slope of the median ratio against log N
  if (res.checkpoints.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = double(res.checkpoints.size());
    for (const auto& cs : res.checkpoints) {
      const double x = std::log(double(cs.level));
      sx += x;
      sy += cs.median;
      sxx += x * x;
      sxy += x * cs.median;
    }
    const double den = m * sxx - sx * sx;
    if (den > 0) res.median_trend = (m * sxy - sx * sy) / den;
  }
  return res;
}

// ---- thick hooks ----

namespace {

void check_hook(const HookEvent& ev) {
  if (ev.i < 1 || ev.j < 1 || ev.l < 0 || ev.t < 1) throw ArgumentError("HookEvent: need i, j, t >= 1 and l >= 0");
}

}  // namespace

bool thick_hook_holds(const Signature& lam, const HookEvent& ev) {
  check_hook(ev);
  const int N = lam.level();
  if (ev.i > N) throw ArgumentError("thick_hook_holds: row i exceeds the level");
  if (lam(ev.i) != ev.j - 1) return false;
  if (ev.i > 1 && lam(ev.i - 1) < ev.j) return false;
  const int r = N - ev.l;
  if (r < 1) return false;
  if (lam(r) != ev.m + 1) return false;
  if (r + 1 <= N && lam(r + 1) > ev.m) return false;
  return true;
}

HookTrace thick_hook_event(const Path& path, const HookEvent& ev) {
  check_hook(ev);
  const int first = std::max(ev.t, path.start_level());
  if (!path.covers(first)) throw ArgumentError("thick_hook_event: path does not reach level t");
  HookTrace tr;
  tr.first_level = first;
  for (int N = first; N <= path.end_level(); ++N) {
    const Signature& lam = path.at(N);
    const bool ok = ev.i <= lam.level() && thick_hook_holds(lam, ev);
    tr.holds.push_back(ok);
    if (!ok && tr.first_violation == 0) tr.first_violation = N;
  }
  return tr;
}

double hook_escape_ratio(const Signature& lam, int i, const ZwParams& params) {
  const int n = lam.level();
  if (i < 1 || i > n) throw ArgumentError("hook_escape_ratio: row out of range");
  const double j = double(lam(i)) + 1.0;
  const Complex num = params.z() - j + double(i);
  const Complex den = params.w() + double(n) + j - double(i);
  return std::norm(num) / std::norm(den) * dimension_ratio_row_increment(lam, i);
}

// ---- Abel transform ----

namespace {

void check_abel(const std::vector<double>& b, int n) {
  if (n < 2) throw ArgumentError("abel: n must be at least 2");
  if (b.size() < static_cast<std::size_t>(n)) throw ArgumentError("abel: sequence shorter than n");
}

}  // namespace

double abel_weighted_limit(const std::vector<double>& b, int n) {
  check_abel(b, n);
  long double acc = 0.0L;
  for (int i = 2; i <= n; ++i) acc += static_cast<long double>(b[i - 1]) * std::log(static_cast<long double>(i));
  return static_cast<double>(acc / std::log(static_cast<long double>(n)));
}

AbelIdentity abel_identity(const std::vector<double>& b, int n, int L) {
  check_abel(b, n);
  if (L < 1 || L > n) throw ArgumentError("abel_identity: L must lie in [1, n]");
  const long double logn = std::log(static_cast<long double>(n));
  auto v = [&](int k) { return std::log(static_cast<long double>(k)) / logn; };
  std::vector<long double> B(static_cast<std::size_t>(n) + 1, 0.0L);
  for (int k = 1; k <= n; ++k) B[k] = B[k - 1] + b[k - 1];
  long double rearranged = B[n] * v(L);
  for (int k = L; k <= n - 1; ++k) rearranged -= (B[n] - B[k]) * (v(k) - v(k + 1));
  for (int k = 1; k < L; ++k) rearranged += B[k] * (v(k) - v(k + 1));
  return AbelIdentity{abel_weighted_limit(b, n), static_cast<double>(rearranged)};
}

}  // namespace gtzw
