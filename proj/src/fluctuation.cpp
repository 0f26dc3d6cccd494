#include "gtzw/fluctuation.hpp"

#include <cmath>
#include <string>

#include "gtzw/errors.hpp"

namespace gtzw {

namespace {

constexpr double kNormalizerEps = 1e-13;

Complex kc(Row k) { return Complex(double(k), 0.0); }

}  // namespace

void FluctuationConfig::validate(const ZwParams& params) const {
  if (!(delta > 0.0)) throw ArgumentError("delta must be positive");
  if (start_level < 1) throw ArgumentError("start_level must be at least 1");
  for (std::size_t i = 1; i < window_levels.size(); ++i)
    if (window_levels[i] <= window_levels[i - 1]) throw ArgumentError("window levels must increase strictly");
  if (!((params.w() + kc(k)).real() > 0.0)) throw ArgumentError("Re(k + w) must be positive");
}

std::vector<int> doubling_windows(int first, int count) {
  if (first < 1 || count < 1) throw ArgumentError("doubling_windows: first and count must be positive");
  std::vector<int> out{first};
  while (static_cast<int>(out.size()) < count) out.push_back(out.back() * 2);
  return out;
}

std::optional<Box> added_box_with_content(const Signature& lower, const Signature& upper, Row k) {
  for (const Box& b : skew_cells(positive_part(upper), positive_part(lower)))
    if (b.content() == k) return b;
  return std::nullopt;
}

double log_h_statistic(const Path& path, int level, const ZwParams& params, const ZwParams& params_prime) {
  if (!path.covers(level) || !path.covers(level + 1))
    throw ArgumentError("h_statistic: path must cover levels N and N+1");
  if (params == params_prime) return 0.0;
  const Signature& mu = path.at(level);
  const Signature& lam = path.at(level + 1);
  const double a = log_row_factors(lam, params) - log_row_factors(mu, params) -
                   log_normalizer_ratio(level, params, kNormalizerEps);
  const double b = log_row_factors(lam, params_prime) - log_row_factors(mu, params_prime) -
                   log_normalizer_ratio(level, params_prime, kNormalizerEps);
  return a - b;
}

double h_statistic(const Path& path, int level, const ZwParams& params, const ZwParams& params_prime) {
  return std::exp(log_h_statistic(path, level, params, params_prime));
}

double multiplier_star(const ZwParams& params, const ZwParams& params_prime, Row k, int n) {
  const Complex shift(double(n) + 1.0 + double(k), 0.0);
  const Complex zk = params.z() - kc(k);
  const Complex wk = params_prime.w() + shift;
  if (std::abs(zk) == 0.0 || std::abs(wk) == 0.0) throw DomainError("multiplier_star: degenerate denominator");
  return std::norm((params_prime.z() - kc(k)) / zk) * std::norm((params.w() + shift) / wk);
}

Path shift_box_modification(const Path& path, int n, Row k) {
  if (!path.covers(n) || !path.covers(n + 2))
    throw ArgumentError("shift_box_modification: path must cover levels n .. n+2");
  const Signature& lower = path.at(n);
  const Signature& mid = path.at(n + 1);
  const Signature& upper = path.at(n + 2);
  const auto box = added_box_with_content(lower, mid, k);
  if (!box)
    throw ModificationNotApplicable(2, "no box with content " + std::to_string(k) + " is added at level " +
                                           std::to_string(n));
  if (added_box_with_content(lower, mid, k + 1))
    throw ModificationNotApplicable(3, "a box with content k+1 is added at the same level");
  if (added_box_with_content(mid, upper, k - 1))
    throw ModificationNotApplicable(4, "a box with content k-1 is added at the next level");

  std::vector<Signature> sigs = path.signatures();
  auto& target = sigs[static_cast<std::size_t>(n + 1 - path.start_level())];
  target = target.with_row(box->row, target(box->row) - 1);
  return Path(path.start_level(), std::move(sigs));
}

std::vector<HRecord> scan_h(const Path& path, const ZwParams& params, const ZwParams& params_prime, int from,
                            int to, double delta) {
  std::vector<HRecord> out;
  from = std::max(from, path.start_level());
  to = std::min(to, path.end_level() - 1);
  for (int level = from; level <= to; ++level) {
    const double h = h_statistic(path, level, params, params_prime);
    out.push_back({level, h, std::abs(h - 1.0) > delta});
  }
  return out;
}

std::vector<int> detect_fluctuations(const Path& path, const FluctuationConfig& cfg, const ZwParams& params,
                                     const ZwParams& params_prime) {
  if (!(cfg.delta > 0.0)) throw ArgumentError("delta must be positive");
  std::vector<int> levels;
  for (const auto& r : scan_h(path, params, params_prime, cfg.start_level, path.end_level(), cfg.delta))
    if (r.is_fluctuation) levels.push_back(r.level);
  return levels;
}

std::vector<BoxEventRecord> admissibility_scan(const Path& path, const FluctuationConfig& cfg) {
  std::vector<BoxEventRecord> out;
  const auto& win = cfg.window_levels;
  for (std::size_t m = 0; m + 1 < win.size(); ++m) {
    for (int n = std::max(win[m], path.start_level()); n < win[m + 1] && n + 1 <= path.end_level(); ++n) {
      const auto box = added_box_with_content(path.at(n), path.at(n + 1), cfg.k);
      if (!box) continue;
      BoxEventRecord rec;
      rec.window = static_cast<int>(m);
      rec.level = n;
      rec.box = *box;
      rec.conditions[0] = true;  // n is the first such level in the window
      rec.conditions[1] = box->content() == cfg.k;
      rec.conditions[2] = !added_box_with_content(path.at(n), path.at(n + 1), cfg.k + 1);
      rec.conditions[3] =
          path.covers(n + 2) && !added_box_with_content(path.at(n + 1), path.at(n + 2), cfg.k - 1);
      out.push_back(rec);
      break;
    }
  }
  return out;
}

std::vector<double> loglr_trace(const Path& path, const ZwParams& params, const ZwParams& params_prime) {
  std::vector<double> out{0.0};
  for (int level = path.start_level(); level < path.end_level(); ++level)
    out.push_back(out.back() + log_h_statistic(path, level, params, params_prime));
  return out;
}

double level_one_log_ratio(const Signature& lam, const ZwParams& params, const ZwParams& params_prime,
                           double eps_tail) {
  if (lam.level() != 1) throw ArgumentError("level_one_log_ratio: expects a level-one signature");
  const auto a = level_one_law(params, eps_tail);
  const auto b = level_one_law(params_prime, eps_tail);
  return (log_row_factors(lam, params) - a.log_normalizer) - (log_row_factors(lam, params_prime) - b.log_normalizer);
}

SeparatingChoice find_separating_k(const ZwParams& params, const ZwParams& params_prime, Row k_max) {
  SeparatingChoice best;
  double best_gap = -1.0;
  for (Row k = 1; k <= k_max; ++k) {
    if (!((params.w() + kc(k)).real() > 0.0)) continue;
    const double gap = std::abs(std::norm((params_prime.z() - kc(k)) / (params.z() - kc(k))) - 1.0);
    if (gap > best_gap) {
      best_gap = gap;
      best.k = k;
    }
  }
  if (best_gap < 0.0) throw DomainError("find_separating_k: no k in range with Re(k + w) > 0");
  if (best_gap == 0.0) throw DomainError("find_separating_k: the z-factor equals 1 for every k");
  best.nu = best_gap;
  best.delta = best_gap / 100.0;
  // Last level where the w-factor is still nu/100 away from 1; the factor is
  // 1 + O(1/N), so a generous finite scan finds it.
  constexpr int kScan = 10'000'000;
  int last_bad = 0;
  for (int n = 1; n <= kScan; ++n) {
    const Complex shift(double(n) + 1.0 + double(best.k), 0.0);
    const double f = std::norm((params.w() + shift) / (params_prime.w() + shift));
    if (std::abs(f - 1.0) >= best.nu / 100.0) last_bad = n;
  }
  if (last_bad == kScan) throw DomainError("find_separating_k: level threshold beyond the scan range");
  best.level_threshold = last_bad + 1;
  return best;
}

}  // namespace gtzw
