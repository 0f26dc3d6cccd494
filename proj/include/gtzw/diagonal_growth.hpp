#pragma once

#include <cstdint>
#include <vector>

#include "gtzw/coupling.hpp"
#include "gtzw/signature.hpp"
#include "gtzw/zw_measure.hpp"

namespace gtzw {

// ---- diagonal traces ----

/// xi_N for N = 1 .. end_level (entry N-1): 1 iff tau+(N) / tau+(N-1)
/// contains a content-k cell, with tau(0) the empty diagram. The path must
/// start at level 1.
std::vector<int> xi_indicators(const Path& path, Row k);

struct GrowthTrace {
  Row k = 0;
  std::vector<int> xi;       // entry N-1 is xi_N
  std::vector<Row> s;        // s_N = xi_1 + ... + xi_N
  std::vector<Row> tilde_s;  // main-diagonal length of tau+(N)
};
GrowthTrace growth_trace(const Path& path, Row k);

// ---- conditional addition probabilities ----

/// Prob{tau+(N+1) / tau+(N) has a content-k cell | tau(N) = mu}, by exact
/// enumeration of the truncated transition.
double conditional_add_probability(const Signature& mu, Row k, const ZwParams& params, double eps_tail = 1e-10);

/// Same event, additionally conditioned on a content-(k-1) cell being added.
/// Returns 0 when the conditioning event has probability 0.
double conditional_add_probability_given_previous(const Signature& mu, Row k, const ZwParams& params,
                                                  double eps_tail = 1e-10);

struct C1Fit {
  double c1 = 0.0;           // max over sampled (path, level) of N * q
  double mean_scaled = 0.0;  // mean of N * q
  double stderr_scaled = 0.0;
  std::uint64_t samples = 0;
  int level_lo = 0;
  int level_hi = 0;
};

/// Monte-Carlo c1 over levels [level_lo, level_hi]: along sampled paths, q at
/// level N is the Rao-Blackwellised Gibbs estimate of the addition
/// probability given tau(N). Throws StatisticalError with fewer than 10
/// informative samples.
C1Fit fit_c1(const ZwParams& params, Row k, int level_lo, int level_hi, int n_paths, const SamplerConfig& cfg,
             int workers = 1);

/// max over levels N <= max_level and signatures mu at level N with rows in
/// [lo, hi] of N * conditional_add_probability(mu, k).
double exact_c1(const ZwParams& params, Row k, int max_level, Row lo, Row hi, double eps_tail = 1e-8);

/// Product law with marginals min(1, c1 / N), N = 1 .. n_levels.
BernoulliProduct<double> bernoulli_envelope(double c1, int n_levels);

/// Law of (xi_1, ..., xi_n) under the chain, by exact enumeration with
/// pruning: histories whose mass falls below `prune` are dropped and their
/// total is returned in dropped_mass. Transitions are renormalized on their
/// truncated support, so law.total() + dropped_mass = 1.
struct XiLaw {
  FiniteBinaryDistribution<double> law;
  double dropped_mass = 0.0;
};
XiLaw exact_xi_law(const ZwParams& params, Row k, int n, double eps_tail = 1e-6, double prune = 1e-12);

// ---- growth experiment ----

struct CheckpointStats {
  int level = 0;
  double quantile_05 = 0.0;
  double median = 0.0;
  double quantile_95 = 0.0;
  double mean = 0.0;
  double tilde_median = 0.0;  // median of tilde_s_N / log N
  double s_mean = 0.0;
  double s_stddev = 0.0;
  double envelope_mean = 0.0;  // sum_{i<=N} min(1, c1 / i)
  double envelope_variance = 0.0;
};

struct GrowthResult {
  Row k = 0;
  int n_levels = 0;
  int n_paths = 0;
  std::uint64_t seed = 0;
  double c1 = 0.0;
  C1Fit fit;
  std::vector<CheckpointStats> checkpoints;
  std::uint64_t tilde_violations = 0;  // (path, level) pairs with tilde_s > s + k
  std::uint64_t level_checks = 0;
  double median_trend = 0.0;  // least-squares slope of the median ratio in log N
};

/// Halving grid n, n/2, n/4, ... (>= 2), ascending.
std::vector<int> growth_checkpoints(int n_levels);

/// Samples n_paths paths to n_levels, tracking s_N, tilde_s_N and the
/// Rao-Blackwellised addition probabilities (used for c1) on the fly.
GrowthResult growth_experiment(const ZwParams& params, Row k, int n_levels, int n_paths, const SamplerConfig& cfg,
                               int workers = 1);

// ---- thick hooks ----

/// Levels N >= t with tau_i(N) = j-1, tau_{i-1}(N) >= j, tau_{N-l}(N) = m+1
/// and tau_{N-l+1}(N) <= m. Rows 0 and N+1 impose no constraint. m may be
/// negative; with m >= 0 the event needs j >= m + 2 to be non-empty.
struct HookEvent {
  int i = 1;
  Row j = 1;
  int l = 0;
  Row m = 0;
  int t = 1;
};

struct HookTrace {
  int first_level = 0;
  std::vector<bool> holds;  // entry N - first_level
  int first_violation = 0;  // 0 if the event holds on the whole path
  bool survives_to(int level) const { return first_violation == 0 || first_violation > level; }
};

HookTrace thick_hook_event(const Path& path, const HookEvent& ev);
bool thick_hook_holds(const Signature& lam, const HookEvent& ev);

/// P(lam') / P(lam) at lam's level n, where lam' raises row i by one:
/// |(z - j + i) / (w + n + j - i)|^2 * Dim(lam') / Dim(lam), j = lam_i + 1.
double hook_escape_ratio(const Signature& lam, int i, const ZwParams& params);

// ---- Abel transform ----

/// (sum_{i<=n} b_i log i) / log n with b[0] = b_1.
double abel_weighted_limit(const std::vector<double>& b, int n);

struct AbelIdentity {
  double direct = 0.0;
  double rearranged = 0.0;
};
/// Both sides of the three-term rearrangement with split point L:
/// B_n log L / log n - sum_{k=L}^{n-1} T_k (v_k - v_{k+1}) + sum_{k<L} B_k (v_k - v_{k+1}),
/// v_k = log k / log n, B_k = b_1 + ... + b_k, T_k = b_{k+1} + ... + b_n.
AbelIdentity abel_identity(const std::vector<double>& b, int n, int L);

}  // namespace gtzw
