#include "gtzw/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gtzw/errors.hpp"

namespace gtzw {

namespace {

constexpr Row kUnbounded = std::numeric_limits<Row>::max() / 4;
constexpr double kCutoff = 32.0;
constexpr std::size_t kMaxWalk = 20'000'000;

// A level-(N+1) extension of mu stored as runs. Every run of equal entries
// mu_a = ... = mu_b contributes a free row a and pinned rows a+1..b with
// value mu_a; row N+1 is free as well. Pinned rows stay constant, so a level
// with R distinct values of mu costs O(R) per weight ratio instead of O(N).
class CompactLevel {
 public:
  struct Item {
    int first;
    int last;
    Row value;
    bool free;
    Row lo;
    Row hi;
  };

  CompactLevel(const Signature& mu, const ZwParams& params) : params_(params), n_(mu.level() + 1) {
    const int N = mu.level();
    int a = 1;
    while (a <= N) {
      int b = a;
      while (b < N && mu(b + 1) == mu(a)) ++b;
      const Row hi = a == 1 ? kUnbounded : mu(a - 1);
      items_.push_back({a, a, mu(a), true, mu(a), hi});
      if (b > a) items_.push_back({a + 1, b, mu(a), false, mu(a), mu(a)});
      a = b + 1;
    }
    items_.push_back({n_, n_, mu(N), true, -kUnbounded, mu(N)});
  }

  std::vector<Item>& items() { return items_; }

  void load(const Signature& lam) {
    for (auto& it : items_) {
      if (it.free) {
        it.value = lam(it.first);
      } else {
        for (int v = it.first; v <= it.last; ++v)
          if (lam(v) != it.value) throw ArgumentError("conditional_row_tail: lam does not interlace mu");
      }
    }
  }

  Signature expand() const {
    std::vector<Row> rows(static_cast<std::size_t>(n_));
    for (const auto& it : items_)
      for (int v = it.first; v <= it.last; ++v) rows[static_cast<std::size_t>(v - 1)] = it.value;
    return Signature(std::move(rows));
  }

  // log w(x + 1) - log w(x) for the free item k, all other rows fixed.
  double log_step(std::size_t k, Row x) const {
    const int i = items_[k].first;
    const double xd = double(x);
    double ratio = std::norm(params_.z() + double(i - 1) - xd) / std::norm(params_.w() + double(n_ + 1 - i) + xd);
    for (std::size_t j = 0; j < items_.size(); ++j) {
      if (j == k) continue;
      const auto& it = items_[j];
      const double c = double(it.value);
      if (it.first > i) {
        const double da = xd - i - c + it.first;
        const double db = xd - i - c + it.last;
        ratio *= (db + 1.0) / da;
      } else {
        const double ea = c - it.first + i - xd;
        const double eb = c - it.last + i - xd;
        ratio *= (eb - 1.0) / ea;
      }
    }
    return std::log(ratio);
  }

  // Conditional law of item k on its window, truncated at the cutoff.
  void conditional(std::size_t k, std::vector<Row>& xs, std::vector<double>& lw) const {
    const auto& it = items_[k];
    xs.clear();
    lw.clear();
    const Row x0 = it.value;
    xs.push_back(x0);
    lw.push_back(0.0);
    double top = 0.0;
    double cur = 0.0;
    for (Row x = x0; x < it.hi;) {
      cur += log_step(k, x);
      ++x;
      xs.push_back(x);
      lw.push_back(cur);
      top = std::max(top, cur);
      if (cur < top - kCutoff - std::log1p(double(x - x0))) break;
      if (xs.size() > kMaxWalk) throw ResourceError("gibbs: conditional window exceeds the walk budget");
    }
    cur = 0.0;
    for (Row x = x0; x > it.lo;) {
      cur -= log_step(k, x - 1);
      --x;
      xs.push_back(x);
      lw.push_back(cur);
      top = std::max(top, cur);
      if (cur < top - kCutoff - std::log1p(double(x0 - x))) break;
      if (xs.size() > kMaxWalk) throw ResourceError("gibbs: conditional window exceeds the walk budget");
    }
    for (double& v : lw) v = std::exp(v - top);
  }

  void resample(std::size_t k, StreamRng& rng) {
    if (items_[k].lo == items_[k].hi) return;
    conditional(k, xs_, w_);
    double total = 0.0;
    for (double v : w_) total += v;
    double u = rng.uniform() * total;
    std::size_t pick = w_.size() - 1;
    for (std::size_t t = 0; t < w_.size(); ++t) {
      u -= w_[t];
      if (u < 0.0) {
        pick = t;
        break;
      }
    }
    items_[k].value = xs_[pick];
  }

  double tail(std::size_t k, Row threshold) {
    const auto& item = items_[k];
    if (!item.free || item.lo == item.hi) return item.value >= threshold ? 1.0 : 0.0;
    if (threshold > item.hi) return 0.0;
    if (threshold <= item.lo) return 1.0;
    conditional(k, xs_, w_);
    double total = 0.0, hit = 0.0;
    for (std::size_t t = 0; t < xs_.size(); ++t) {
      total += w_[t];
      if (xs_[t] >= threshold) hit += w_[t];
    }
    return hit / total;
  }

  std::size_t find_row(int i) const {
    for (std::size_t k = 0; k < items_.size(); ++k)
      if (items_[k].first <= i && i <= items_[k].last) return k;
    throw ArgumentError("row index out of range");
  }

 private:
  const ZwParams& params_;
  int n_;
  std::vector<Item> items_;
  std::vector<Row> xs_;
  std::vector<double> w_;
};

}  // namespace

Signature gibbs_sample_level(const Signature& mu, const ZwParams& params, const SamplerConfig& cfg,
                             StreamRng& rng, RowProbe* probe) {
  CompactLevel state(mu, params);
  const int sweeps = cfg.burn_in + cfg.gibbs_sweeps;
  auto& items = state.items();
  const std::size_t probe_item = probe ? state.find_row(probe->row) : 0;
  for (int s = 0; s < sweeps; ++s) {
    for (std::size_t k = 0; k < items.size(); ++k)
      if (items[k].free) state.resample(k, rng);
    if (probe && s >= cfg.burn_in) {
      const double t = state.tail(probe_item, probe->threshold);
      ++probe->samples;
      probe->mean += (t - probe->mean) / probe->samples;
    }
  }
  return state.expand();
}

double conditional_row_tail(const Signature& mu, const Signature& lam, int i, Row threshold,
                            const ZwParams& params) {
  if (lam.level() != mu.level() + 1 || !interlaces(mu, lam))
    throw ArgumentError("conditional_row_tail: lam must interlace mu at the next level");
  if (i < 1 || i > lam.level()) throw ArgumentError("conditional_row_tail: row index out of range");
  CompactLevel state(mu, params);
  state.load(lam);
  const std::size_t k = state.find_row(i);
  return state.tail(k, threshold);
}

}  // namespace gtzw
