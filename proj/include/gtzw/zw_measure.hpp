#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gtzw/rng.hpp"
#include "gtzw/signature.hpp"
#include "gtzw/special_functions.hpp"

namespace gtzw {

/// Distance below which a parameter counts as an integer.
inline constexpr double kIntegerTolerance = 1e-9;

/// Admissible pair: z, w not integers and Re(z + w) > -1/2.
class ZwParams {
 public:
  /// Throws DomainError if the pair is not admissible.
  ZwParams(Complex z, Complex w);

  /// Empty optional if admissible, otherwise the reason.
  static std::optional<std::string> check(Complex z, Complex w);

  Complex z() const noexcept { return z_; }
  Complex w() const noexcept { return w_; }
  /// (w, z): the parameter half of the symmetry lam -> (-lam_N, ..., -lam_1).
  ZwParams swapped() const { return ZwParams(w_, z_); }

  friend bool operator==(const ZwParams&, const ZwParams&) = default;

 private:
  Complex z_;
  Complex w_;
};

enum class SamplerMode { exact_enumeration, gibbs };

struct SamplerConfig {
  double eps_tail = 1e-6;
  SamplerMode mode = SamplerMode::exact_enumeration;
  int gibbs_sweeps = 2;
  int burn_in = 2;
  std::uint64_t seed = 0;
  /// Largest support exact enumeration may visit before giving up.
  std::uint64_t max_support = 4'000'000;

  /// Throws ArgumentError on out-of-range fields.
  void validate() const;
};

struct LevelTransition {
  Signature source;
  std::vector<Signature> support;
  std::vector<double> log_probs;
  /// Estimated mass outside the truncated support, relative to the kept mass.
  double tail_mass_bound = 0.0;
  Row top_cap = 0;
  Row bottom_cap = 0;
};

/// Per-row factor -log|Gamma(z - x + i)|^2 - log|Gamma(w + n + 1 + x - i)|^2
/// of the level-n density.
double log_row_factor(const ZwParams& params, int level, int i, Row x);

/// log P_N(lam) + log S_N: the row factors plus log Dim_N(lam).
double log_unnormalized_density(const Signature& lam, const ZwParams& params);

/// Row factors only (log P_N + log S_N - log Dim_N); Dim cancels in any
/// ratio of two parameter pairs at the same signature.
double log_row_factors(const Signature& lam, const ZwParams& params);

/// Truncated summation of the unnormalized level-(N+1) density over the
/// extensions of mu. Caps grow until the estimated tail mass falls below
/// eps_tail times the kept mass. The visitor, if given, sees every kept cell.
struct ExtensionSum {
  double log_mass = 0.0;
  double tail_mass_bound = 0.0;
  Row top_cap = 0;
  Row bottom_cap = 0;
  std::uint64_t cells = 0;
};
using ExtensionVisitor = std::function<void(std::span<const Row> rows, double log_weight)>;
ExtensionSum sum_extensions(const Signature& mu, const ZwParams& params, double eps_tail,
                            std::uint64_t max_cells, const ExtensionVisitor& visit = {});

/// Lower bound on one row (1-based) of the extension at level N + 1.
struct RowFloor {
  int row = 1;
  Row min = 0;
};

/// log P(lam_row >= min for every floor | mu), with the same truncation as
/// sum_extensions; the neglected tail is bounded by eps_tail in both terms.
double log_extension_probability(const Signature& mu, const ZwParams& params, std::span<const RowFloor> floors,
                                 double eps_tail, std::uint64_t max_cells = std::uint64_t(1) << 32);

/// log(S_{N+1} / S_N), from the extensions of the all-zero signature
/// (interior rows are pinned, leaving a two-row sum).
double log_normalizer_ratio(int level, const ZwParams& params, double eps_tail = 1e-13);

/// log p(lam | mu) = log u_{N+1}(lam) - log u_N(mu) - log(S_{N+1}/S_N).
double log_transition_probability(const Signature& mu, const Signature& lam, const ZwParams& params,
                                  double log_norm_ratio);

LevelTransition transition_distribution(const Signature& mu, const ZwParams& params,
                                        const SamplerConfig& cfg);

/// |sum over the truncated extensions of p(lam | mu) - 1|, with p normalized
/// by the independently computed S_{N+1}/S_N.
double coherency_residual(const Signature& mu, const ZwParams& params, double eps_tail);

/// Level-1 marginal M_1 on a truncated window, as (first row, probs).
struct LevelOneLaw {
  Row lo = 0;
  std::vector<double> probs;
  std::vector<double> cdf;
  double tail_mass_bound = 0.0;
  /// log of the truncated sum of the level-one row factors (log S_1).
  double log_normalizer = 0.0;
};
LevelOneLaw level_one_law(const ZwParams& params, double eps_tail);
Signature sample_level_one(const LevelOneLaw& law, StreamRng& rng);

/// One step of the chain. Exact mode samples transition_distribution; Gibbs
/// mode runs systematic single-row heat-bath sweeps.
Signature sample_level(const Signature& mu, const ZwParams& params, const SamplerConfig& cfg,
                       StreamRng& rng);

/// Path from level 1 to n_levels. Level m draws from the stream
/// (cfg.seed, path_index, m).
Path sample_path(int n_levels, const ZwParams& params, const SamplerConfig& cfg,
                 std::uint64_t path_index = 0);

/// Closed-form ratio p_m = P(lam_i = j-1+m | rest) / P(lam_i = j-1 | rest)
/// at level N+1, where (i, j) is the content-k box that an extension of mu
/// can add and lam interlaces mu with lam_i = j - 1.
double p_m_ratio(const Signature& mu, const Signature& lam, int i, Row j, Row m, const ZwParams& params);

/// The unique box (i, i + k) that a horizontal strip on top of mu+ can add at
/// the next level: mu+_i < i + k <= mu+_{i-1}. An extension lam adds it iff
/// lam_i >= i + k.
std::optional<Box> addable_box_with_content(const Signature& mu, Row k);

/// Majorant of the Gamma part of sum_{m>=1} p_m for lam at level N+1:
///   (A/C)^2 * 2F1(a, a; c; 1),  a = A + 1,  c = C + 1,
/// with A = |Re(k - z)| + |Im z| and C = Re(w + N + 1 + k). The Dim part of
/// p_m is handled separately (empirical c(k)).
struct PmTailBound {
  double a = 0.0;
  double c = 0.0;
  double prefactor = 0.0;
  double gauss = 0.0;
  double series = 0.0;
  double bound = 0.0;
  bool convergent = false;
};
/// level_n is N, the level of mu.
PmTailBound p_m_tail_bound(const ZwParams& params, Row k, int level_n);

}  // namespace gtzw
