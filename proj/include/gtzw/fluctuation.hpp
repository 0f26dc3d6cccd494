#pragma once

#include <array>
#include <optional>
#include <vector>

#include "gtzw/signature.hpp"
#include "gtzw/zw_measure.hpp"

namespace gtzw {

struct FluctuationConfig {
  double delta = 0.01;
  Row k = 1;
  int start_level = 1;
  /// N_1 < N_2 < ...; window m is [N_m, N_{m+1}).
  std::vector<int> window_levels;

  /// Throws ArgumentError unless delta > 0, windows increase strictly and
  /// Re(k + w) > 0 for the given parameters.
  void validate(const ZwParams& params) const;
};

/// N_1, 2 N_1, 4 N_1, ... (count entries).
std::vector<int> doubling_windows(int first, int count);

struct BoxEventRecord {
  int window = 0;
  int level = 0;  // n(m): the content-k box lies in tau+(n+1) / tau+(n)
  Box box;
  std::array<bool, 4> conditions{};
};

/// Content-k box of tau+(n+1) / tau+(n), if any (at most one exists).
std::optional<Box> added_box_with_content(const Signature& lower, const Signature& upper, Row k);

/// h_N = [P_{N+1} / P'_{N+1}] / [P_N / P'_N] along the path, computed as the
/// quotient of the two one-step transition probabilities. Dim cancels, and
/// the normalizers enter only through log(S_{N+1} / S_N).
double log_h_statistic(const Path& path, int level, const ZwParams& params, const ZwParams& params_prime);
double h_statistic(const Path& path, int level, const ZwParams& params, const ZwParams& params_prime);

/// Factor by which P_{n+1} / P'_{n+1} changes when a content-k box added at
/// level n is instead added at level n + 1 (that row of tau(n+1) drops by 1):
///   |(z' - k) / (z - k)|^2 * |(w + n + 1 + k) / (w' + n + 1 + k)|^2.
double multiplier_star(const ZwParams& params, const ZwParams& params_prime, Row k, int n);

/// Moves the content-k box added between levels n and n+1 so that it is
/// added between n+1 and n+2 instead. Throws ModificationNotApplicable with
/// the failing condition (2, 3 or 4) when the move is not allowed.
Path shift_box_modification(const Path& path, int n, Row k);

struct HRecord {
  int level = 0;
  double h = 1.0;
  bool is_fluctuation = false;
};

/// h at every level in [from, to] (both clamped to the path).
std::vector<HRecord> scan_h(const Path& path, const ZwParams& params, const ZwParams& params_prime, int from,
                            int to, double delta);

/// Levels N >= cfg.start_level with |h_N - 1| > delta.
std::vector<int> detect_fluctuations(const Path& path, const FluctuationConfig& cfg, const ZwParams& params,
                                     const ZwParams& params_prime);

/// One record per window that sees a content-k box; conditions follow the
/// four items defining the admissible set.
std::vector<BoxEventRecord> admissibility_scan(const Path& path, const FluctuationConfig& cfg);

/// Cumulative sum of log h from the first level: entry t is
/// log(P_{s+t} / P'_{s+t}) - log(P_s / P'_s), s = path.start_level().
std::vector<double> loglr_trace(const Path& path, const ZwParams& params, const ZwParams& params_prime);

/// log(P_1(lam) / P'_1(lam)) with both level-one laws normalized by truncated sums.
double level_one_log_ratio(const Signature& lam, const ZwParams& params, const ZwParams& params_prime,
                           double eps_tail = 1e-12);

struct SeparatingChoice {
  Row k = 0;
  double nu = 0.0;
  double delta = 0.0;
  /// From this level on the w-factor of multiplier_star is within nu / 100 of 1.
  int level_threshold = 1;
};

/// Scans k in [1, k_max] with Re(k + w) > 0 and keeps the k that maximizes
/// ||(z' - k) / (z - k)|^2 - 1|; delta = nu / 100.
SeparatingChoice find_separating_k(const ZwParams& params, const ZwParams& params_prime, Row k_max = 64);

}  // namespace gtzw
