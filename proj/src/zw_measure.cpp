#include "gtzw/zw_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>

#include "gtzw/dimension.hpp"
#include "gtzw/errors.hpp"
#include "gtzw/gibbs.hpp"

namespace gtzw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool near_integer(double x) { return std::abs(x - std::nearbyint(x)) < kIntegerTolerance; }
bool is_integer(Complex s) { return std::abs(s.imag()) < kIntegerTolerance && near_integer(s.real()); }

double log_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

// Majorant of the one-step weight ratio of a free boundary row, valid for
// every completion of the remaining rows:
//   |y - zeta|^2 / |y + omega + n|^2 * prod_o (y - o + 1) / (y - o).
struct RowMajorant {
  Complex zeta;
  Complex omega;
  int n = 1;
  std::vector<double> offsets;

  double ratio(double y) const {
    double r = std::norm(Complex(y, 0.0) - zeta) / std::norm(Complex(y, 0.0) + omega + double(n));
    for (double o : offsets) r *= (y - o + 1.0) / (y - o);
    return r;
  }

  // Exponent s with ratio(y) ~ 1 - s / y.
  double decay_exponent() const {
    return 2.0 * (zeta + omega).real() + 2.0 * n - static_cast<double>(offsets.size());
  }

  // Bound on sum_{m>=1} prod_{t<m} ratio(y + t): 64 explicit terms, then a
  // power-law remainder with a safety factor of two.
  double tail_factor(double y) const {
    constexpr int kTerms = 64;
    const double s = decay_exponent();
    if (s <= 1.0) return kInf;
    double prod = 1.0;
    double sum = 0.0;
    for (int t = 0; t < kTerms; ++t) {
      const double r = ratio(y + t);
      if (!(r < 1.0)) return kInf;
      prod *= r;
      sum += prod;
    }
    return sum + 2.0 * prod * (y + kTerms) / (s - 1.0);
  }
};

RowMajorant top_majorant(const Signature& mu, const ZwParams& p) {
  const int N = mu.level();
  RowMajorant m{p.z(), p.w(), N + 1, {}};
  for (int v = 2; v <= N + 1; ++v) m.offsets.push_back(double(mu(v - 1) - v + 1));
  return m;
}

// Bottom row in the reflected coordinate y = -x.
RowMajorant bottom_majorant(const Signature& mu, const ZwParams& p) {
  const int N = mu.level();
  const int n = N + 1;
  RowMajorant m{p.w(), p.z(), n, {}};
  for (int u = 1; u <= N; ++u) m.offsets.push_back(double(-mu(u) + u - n));
  return m;
}

double log_dim_denominator(int n) {
  double acc = 0.0;
  for (int d = 1; d < n; ++d) acc += double(n - d) * std::log(double(d));
  return acc;
}

}  // namespace

// ---- parameters ------------------------------------------------------------

std::optional<std::string> ZwParams::check(Complex z, Complex w) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || !std::isfinite(w.real()) ||
      !std::isfinite(w.imag()))
    return "parameters must be finite";
  if (is_integer(z)) return "z must not be an integer";
  if (is_integer(w)) return "w must not be an integer";
  if (!((z + w).real() > -0.5)) return "Re(z + w) must exceed -1/2";
  return std::nullopt;
}

ZwParams::ZwParams(Complex z, Complex w) : z_(z), w_(w) {
  if (auto why = check(z, w)) throw DomainError("ZwParams: " + *why);
}

void SamplerConfig::validate() const {
  if (!(eps_tail > 0.0 && eps_tail < 1.0)) throw ArgumentError("eps_tail must lie in (0, 1)");
  if (gibbs_sweeps < 1) throw ArgumentError("gibbs_sweeps must be at least 1");
  if (burn_in < 0) throw ArgumentError("burn_in must be non-negative");
  if (max_support == 0) throw ArgumentError("max_support must be positive");
}

// ---- densities -------------------------------------------------------------

double log_row_factor(const ZwParams& params, int level, int i, Row x) {
  const double xd = static_cast<double>(x);
  return -log_abs_gamma_sq(params.z() - xd + double(i)) -
         log_abs_gamma_sq(params.w() + double(level + 1) + xd - double(i));
}

double log_row_factors(const Signature& lam, const ZwParams& params) {
  double acc = 0.0;
  for (int i = 1; i <= lam.level(); ++i) acc += log_row_factor(params, lam.level(), i, lam(i));
  return acc;
}

double log_unnormalized_density(const Signature& lam, const ZwParams& params) {
  return log_row_factors(lam, params) + log_weyl_dimension(lam);
}

// ---- truncated extension sums ---------------------------------------------
//
// For an extension lam of mu at level n = N + 1 the interior rows 2..N range
// over [mu_v, mu_{v-1}] and the boundary rows over T >= mu_1, b <= mu_N. With
// l_v = lam_v - v the weight splits as
//   C(interior) + A(T) + B(b) + log(T - b + n - 1),
// so each interior combination contributes a product of two 1D sums.

namespace {

struct Interior {
  std::vector<Row> rows;  // lam_2 .. lam_N
  double constant = 0.0;  // row factors, interior Dim pairs, Dim denominator
};

class ExtensionSummer {
 public:
  ExtensionSummer(const Signature& mu, const ZwParams& params)
      : mu_(mu), params_(params), N_(mu.level()), n_(mu.level() + 1), t0_(mu(1)), b0_(mu(mu.level())),
        top_(top_majorant(mu, params)), bottom_(bottom_majorant(mu, params)) {}

  std::uint64_t interior_count() const {
    std::uint64_t c = 1;
    for (int v = 2; v <= N_; ++v) {
      const auto width = static_cast<std::uint64_t>(mu_(v - 1) - mu_(v) + 1);
      if (c > std::numeric_limits<std::uint64_t>::max() / width) return std::numeric_limits<std::uint64_t>::max();
      c *= width;
    }
    return c;
  }

  void build_interiors() {
    const double dim_den = log_dim_denominator(n_);
    std::vector<Row> cur;
    for (int v = 2; v <= N_; ++v) cur.push_back(mu_(v));
    while (true) {
      Interior in{cur, -dim_den};
      for (std::size_t a = 0; a < cur.size(); ++a) {
        const int v = static_cast<int>(a) + 2;
        in.constant += log_row_factor(params_, n_, v, cur[a]);
        for (std::size_t b = a + 1; b < cur.size(); ++b)
          in.constant += std::log(double(cur[a] - cur[b]) + double(b - a));
      }
      interiors_.push_back(std::move(in));
      // odometer, last row fastest
      int pos = static_cast<int>(cur.size()) - 1;
      while (pos >= 0) {
        const int v = pos + 2;
        if (cur[pos] < mu_(v - 1)) {
          ++cur[pos];
          break;
        }
        cur[pos] = mu_(v);
        --pos;
      }
      if (pos < 0) break;
    }
  }

  void grow_tables(int top_len, int bottom_len) {
    while (static_cast<int>(gt_.size()) <= top_len)
      gt_.push_back(log_row_factor(params_, n_, 1, t0_ + static_cast<Row>(gt_.size())));
    while (static_cast<int>(gb_.size()) <= bottom_len)
      gb_.push_back(log_row_factor(params_, n_, n_, b0_ - static_cast<Row>(gb_.size())));
  }

  // Fills a (top) and b (bottom) for one interior combination.
  void side_weights(const Interior& in, int kt, int kb, std::vector<double>& a, std::vector<double>& b) const {
    a.assign(static_cast<std::size_t>(kt) + 1, 0.0);
    b.assign(static_cast<std::size_t>(kb) + 1, 0.0);
    for (int t = 0; t <= kt; ++t) {
      const double T = double(t0_ + t);
      double acc = gt_[t];
      for (std::size_t k = 0; k < in.rows.size(); ++k) {
        const double l = double(in.rows[k]) - double(k + 2);
        acc += std::log(T - 1.0 - l);
      }
      a[t] = acc;
    }
    for (int t = 0; t <= kb; ++t) {
      const double B = double(b0_ - t);
      double acc = gb_[t];
      for (std::size_t k = 0; k < in.rows.size(); ++k) {
        const double l = double(in.rows[k]) - double(k + 2);
        acc += std::log(l - B + double(n_));
      }
      b[t] = acc;
    }
  }

  struct Totals {
    double log_mass = -kInf;
    double log_top_slice = -kInf;
    double log_bottom_slice = -kInf;
    double log_corner = -kInf;
  };

  // floor, if given, holds a lower bound for each row 1..n (index 0 unused);
  // cells violating it are dropped from the sums.
  Totals totals(int kt, int kb, const std::vector<Row>* floor = nullptr) {
    grow_tables(kt, kb);
    const double g = double(t0_ - b0_ + n_ - 1);
    Totals out;
    std::vector<double> a, b;
    for (const auto& in : interiors_) {
      if (floor) {
        bool ok = true;
        for (std::size_t k = 0; k < in.rows.size() && ok; ++k) ok = in.rows[k] >= (*floor)[k + 2];
        if (!ok) continue;
      }
      side_weights(in, kt, kb, a, b);
      if (floor) {
        for (int t = 0; t <= kt; ++t)
          if (t0_ + t < (*floor)[1]) a[t] = -kInf;
        for (int t = 0; t <= kb; ++t)
          if (b0_ - t < (*floor)[n_]) b[t] = -kInf;
      }
      const double amax = *std::max_element(a.begin(), a.end());
      const double bmax = *std::max_element(b.begin(), b.end());
      if (amax == -kInf || bmax == -kInf) continue;
      double sa0 = 0, sa1 = 0, sb0 = 0, sb1 = 0;
      for (int t = 0; t <= kt; ++t) {
        const double e = std::exp(a[t] - amax);
        sa0 += e;
        sa1 += e * t;
      }
      for (int t = 0; t <= kb; ++t) {
        const double e = std::exp(b[t] - bmax);
        sb0 += e;
        sb1 += e * t;
      }
      const double base = in.constant + amax + bmax;
      out.log_mass = log_add(out.log_mass, base + std::log(sa1 * sb0 + sa0 * sb1 + g * sa0 * sb0));
      out.log_top_slice =
          log_add(out.log_top_slice, in.constant + a[kt] + bmax + std::log(double(kt) * sb0 + sb1 + g * sb0));
      out.log_bottom_slice =
          log_add(out.log_bottom_slice, in.constant + amax + b[kb] + std::log(sa1 + double(kb) * sa0 + g * sa0));
      out.log_corner = log_add(out.log_corner, in.constant + a[kt] + b[kb] + std::log(double(kt + kb) + g));
    }
    return out;
  }

  void visit(int kt, int kb, const ExtensionVisitor& fn) {
    const double g = double(t0_ - b0_ + n_ - 1);
    std::vector<double> a, b;
    std::vector<Row> rows(static_cast<std::size_t>(n_));
    for (const auto& in : interiors_) {
      side_weights(in, kt, kb, a, b);
      std::copy(in.rows.begin(), in.rows.end(), rows.begin() + 1);
      for (int t = 0; t <= kt; ++t) {
        rows.front() = t0_ + t;
        for (int u = 0; u <= kb; ++u) {
          rows.back() = b0_ - u;
          fn(rows, in.constant + a[t] + b[u] + std::log(double(t + u) + g));
        }
      }
    }
  }

  double top_tail_factor(int kt) const { return top_.tail_factor(double(t0_ + kt)); }
  double bottom_tail_factor(int kb) const { return bottom_.tail_factor(double(-(b0_ - kb))); }

 private:
  const Signature& mu_;
  const ZwParams& params_;
  int N_, n_;
  Row t0_, b0_;
  RowMajorant top_, bottom_;
  std::vector<Interior> interiors_;
  std::vector<double> gt_, gb_;
};

}  // namespace

namespace {

struct CapSearch {
  int kt = 8, kb = 8;
  double bound = kInf;
  std::uint64_t combos = 0;
  ExtensionSummer::Totals tot;
};

[[noreturn]] void over_budget(std::uint64_t max_cells) {
  throw ResourceError("transition support exceeds the cell budget (" + std::to_string(max_cells) +
                      "); use gibbs mode");
}

CapSearch find_caps(ExtensionSummer& summer, double eps_tail, std::uint64_t max_cells, bool visiting) {
  CapSearch c;
  c.combos = summer.interior_count();
  if (c.combos > max_cells) over_budget(max_cells);
  summer.build_interiors();
  auto cost = [&](int kt, int kb) {
    const double per = visiting ? double(kt + 1) * double(kb + 1) : double(kt + kb + 2);
    return double(c.combos) * per;
  };
  for (;;) {
    if (cost(c.kt, c.kb) > double(max_cells)) over_budget(max_cells);
    c.tot = summer.totals(c.kt, c.kb);
    const double gt = summer.top_tail_factor(c.kt);
    const double gb = summer.bottom_tail_factor(c.kb);
    const double st = std::exp(c.tot.log_top_slice - c.tot.log_mass);
    const double sb = std::exp(c.tot.log_bottom_slice - c.tot.log_mass);
    const double sc = std::exp(c.tot.log_corner - c.tot.log_mass);
    // beyond the top cap, beyond the bottom cap, beyond both
    const double top_part = std::isinf(gt) ? kInf : gt * st + 0.5 * gt * gb * sc;
    const double bottom_part = std::isinf(gb) ? kInf : gb * sb + 0.5 * gt * gb * sc;
    c.bound = top_part + bottom_part;
    if (c.bound <= eps_tail) break;
    const bool grow_top = std::isinf(gt) || (!std::isinf(gb) && top_part >= bottom_part);
    if (grow_top)
      c.kt += std::max(c.kt, 8);
    else
      c.kb += std::max(c.kb, 8);
  }
  return c;
}

void check_extension_args(const Signature& mu, double eps_tail, const char* who) {
  if (mu.level() < 1) throw ArgumentError(std::string(who) + ": empty signature");
  if (!(eps_tail > 0.0 && eps_tail < 1.0)) throw ArgumentError(std::string(who) + ": eps_tail must lie in (0, 1)");
}

}  // namespace

ExtensionSum sum_extensions(const Signature& mu, const ZwParams& params, double eps_tail,
                            std::uint64_t max_cells, const ExtensionVisitor& visit) {
  check_extension_args(mu, eps_tail, "sum_extensions");
  ExtensionSummer summer(mu, params);
  const CapSearch c = find_caps(summer, eps_tail, max_cells, static_cast<bool>(visit));
  if (visit) summer.visit(c.kt, c.kb, visit);
  ExtensionSum out;
  out.log_mass = c.tot.log_mass;
  out.tail_mass_bound = c.bound;
  out.top_cap = mu(1) + c.kt;
  out.bottom_cap = mu(mu.level()) - c.kb;
  out.cells = c.combos * std::uint64_t(c.kt + 1) * std::uint64_t(c.kb + 1);
  return out;
}

double log_extension_probability(const Signature& mu, const ZwParams& params, std::span<const RowFloor> floors,
                                 double eps_tail, std::uint64_t max_cells) {
  check_extension_args(mu, eps_tail, "log_extension_probability");
  const int n = mu.level() + 1;
  std::vector<Row> floor(static_cast<std::size_t>(n) + 1, std::numeric_limits<Row>::min());
  for (const auto& f : floors) {
    if (f.row < 1 || f.row > n) throw ArgumentError("log_extension_probability: row index out of range");
    floor[f.row] = std::max(floor[f.row], f.min);
  }
  ExtensionSummer summer(mu, params);
  const CapSearch c = find_caps(summer, eps_tail, max_cells, false);
  const auto restricted = summer.totals(c.kt, c.kb, &floor);
  return restricted.log_mass - c.tot.log_mass;
}

// ---- normalizer and transitions ------------------------------------------

double log_normalizer_ratio(int level, const ZwParams& params, double eps_tail) {
  if (level < 1) throw ArgumentError("log_normalizer_ratio: level must be at least 1");
  using Key = std::tuple<int, double, double, double, double, double>;
  static std::mutex mtx;
  static std::map<Key, double> cache;
  const Key key{level, params.z().real(), params.z().imag(), params.w().real(), params.w().imag(), eps_tail};
  {
    std::lock_guard<std::mutex> lock(mtx);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const Signature origin = Signature::zeros(level);
  const auto sum = sum_extensions(origin, params, eps_tail, std::uint64_t(1) << 32);
  const double value = sum.log_mass - log_unnormalized_density(origin, params);
  std::lock_guard<std::mutex> lock(mtx);
  cache.emplace(key, value);
  return value;
}

double log_transition_probability(const Signature& mu, const Signature& lam, const ZwParams& params,
                                  double log_norm_ratio) {
  if (lam.level() != mu.level() + 1 || !interlaces(mu, lam))
    throw ArgumentError("log_transition_probability: lam must interlace mu at the next level");
  return log_unnormalized_density(lam, params) - log_unnormalized_density(mu, params) - log_norm_ratio;
}

LevelTransition transition_distribution(const Signature& mu, const ZwParams& params, const SamplerConfig& cfg) {
  cfg.validate();
  LevelTransition out{mu, {}, {}, 0.0, 0, 0};
  std::vector<double> logw;
  const auto sum = sum_extensions(mu, params, cfg.eps_tail, cfg.max_support,
                                  [&](std::span<const Row> rows, double lw) {
                                    out.support.emplace_back(std::vector<Row>(rows.begin(), rows.end()));
                                    logw.push_back(lw);
                                  });
  out.log_probs.reserve(logw.size());
  for (double lw : logw) out.log_probs.push_back(lw - sum.log_mass);
  out.tail_mass_bound = sum.tail_mass_bound;
  out.top_cap = sum.top_cap;
  out.bottom_cap = sum.bottom_cap;
  return out;
}

double coherency_residual(const Signature& mu, const ZwParams& params, double eps_tail) {
  const auto sum = sum_extensions(mu, params, eps_tail, std::uint64_t(1) << 32);
  const double log_r = log_normalizer_ratio(mu.level(), params, std::min(eps_tail, 1e-13));
  const double log_total = sum.log_mass - log_unnormalized_density(mu, params) - log_r;
  return std::abs(std::expm1(log_total));
}

LevelOneLaw level_one_law(const ZwParams& params, double eps_tail) {
  if (!(eps_tail > 0.0 && eps_tail < 1.0)) throw ArgumentError("level_one_law: eps_tail must lie in (0, 1)");
  const RowMajorant top{params.z(), params.w(), 1, {}};
  const RowMajorant bottom{params.w(), params.z(), 1, {}};
  constexpr Row kMaxWidth = 50'000'000;
  Row lo = -8, hi = 8;
  std::vector<double> f;
  double log_z = 0.0, bound = kInf;
  for (;;) {
    if (hi - lo > kMaxWidth) throw ResourceError("level_one_law: support exceeds the cell budget");
    f.clear();
    for (Row x = lo; x <= hi; ++x) f.push_back(log_row_factor(params, 1, 1, x));
    const double fmax = *std::max_element(f.begin(), f.end());
    double acc = 0.0;
    for (double v : f) acc += std::exp(v - fmax);
    log_z = fmax + std::log(acc);
    const double gt = top.tail_factor(double(hi));
    const double gb = bottom.tail_factor(double(-lo));
    const double top_part = gt * std::exp(f.back() - log_z);
    const double bottom_part = gb * std::exp(f.front() - log_z);
    bound = top_part + bottom_part;
    if (bound <= eps_tail) break;
    if (std::isinf(gt) || (!std::isinf(gb) && top_part >= bottom_part))
      hi += std::max<Row>(hi - lo, 16) / 2;
    else
      lo -= std::max<Row>(hi - lo, 16) / 2;
  }
  LevelOneLaw law;
  law.lo = lo;
  law.tail_mass_bound = bound;
  law.log_normalizer = log_z;
  law.probs.reserve(f.size());
  double c = 0.0;
  for (double v : f) {
    law.probs.push_back(std::exp(v - log_z));
    c += law.probs.back();
    law.cdf.push_back(c);
  }
  return law;
}

namespace {

std::size_t sample_index(const std::vector<double>& cdf, StreamRng& rng) {
  const double u = rng.uniform() * cdf.back();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

}  // namespace

Signature sample_level_one(const LevelOneLaw& law, StreamRng& rng) {
  return Signature{law.lo + static_cast<Row>(sample_index(law.cdf, rng))};
}

Signature sample_level(const Signature& mu, const ZwParams& params, const SamplerConfig& cfg, StreamRng& rng) {
  cfg.validate();
  if (cfg.mode == SamplerMode::gibbs) return gibbs_sample_level(mu, params, cfg, rng);
  const auto tr = transition_distribution(mu, params, cfg);
  std::vector<double> cdf;
  cdf.reserve(tr.log_probs.size());
  double c = 0.0;
  for (double lp : tr.log_probs) cdf.push_back(c += std::exp(lp));
  return tr.support[sample_index(cdf, rng)];
}

Path sample_path(int n_levels, const ZwParams& params, const SamplerConfig& cfg, std::uint64_t path_index) {
  if (n_levels < 1) throw ArgumentError("sample_path: n_levels must be at least 1");
  cfg.validate();
  const auto law = level_one_law(params, cfg.eps_tail);
  std::vector<Signature> sigs;
  sigs.reserve(static_cast<std::size_t>(n_levels));
  auto rng1 = StreamRng::for_stream(cfg.seed, path_index, 1);
  sigs.push_back(sample_level_one(law, rng1));
  for (int level = 2; level <= n_levels; ++level) {
    auto rng = StreamRng::for_stream(cfg.seed, path_index, static_cast<std::uint64_t>(level));
    sigs.push_back(sample_level(sigs.back(), params, cfg, rng));
  }
  return Path(1, std::move(sigs));
}

// ---- conditional row ratios -------------------------------------------------

std::optional<Box> addable_box_with_content(const Signature& mu, Row k) {
  // Row i of the next level can reach column j = i + k iff mu+_i < j <= mu+_{i-1};
  // these windows are disjoint in k, so at most one row qualifies.
  const Partition p = positive_part(mu);
  const int rows = mu.level() + 1;
  for (int i = 1; i <= rows; ++i) {
    const Row j = Row(i) + k;
    if (j < 1) break;
    const Row len = i <= mu.level() ? p[static_cast<std::size_t>(i - 1)] : 0;
    const Row prev = i == 1 ? std::numeric_limits<Row>::max() : p[static_cast<std::size_t>(i - 2)];
    if (len < j && j <= prev) return Box{i, j};
  }
  return std::nullopt;
}

double p_m_ratio(const Signature& mu, const Signature& lam, int i, Row j, Row m, const ZwParams& params) {
  const int N = mu.level();
  if (lam.level() != N + 1 || !interlaces(mu, lam))
    throw ArgumentError("p_m_ratio: lam must interlace mu at the next level");
  if (i < 1 || i > N + 1 || lam(i) != j - 1) throw ArgumentError("p_m_ratio: lam_i must equal j - 1");
  const auto box = addable_box_with_content(mu, j - i);
  if (!box || box->row != i || box->col != j)
    throw ArgumentError("p_m_ratio: (i, j) is not the content-(j - i) box the next level can add");
  if (m < 0) throw ArgumentError("p_m_ratio: m must be non-negative");
  const Row target = j - 1 + m;
  if (i > 1 && (target > lam(i - 1) || target > mu(i - 1)))
    throw ArgumentError("p_m_ratio: raising row i by m breaks interlacing");
  if (m == 0) return 1.0;

  const double k = double(j - i);
  const double md = double(m);
  const Complex z = params.z(), w = params.w();
  double log_p = log_abs_gamma_sq(z - k + 1.0) - log_abs_gamma_sq(z - k + 1.0 - md) +
                 log_abs_gamma_sq(w + double(N) + 1.0 + k) - log_abs_gamma_sq(w + double(N) + 1.0 + k + md);
  const double li = double(j - 1 - i);
  for (int v = 1; v <= N + 1; ++v) {
    if (v == i) continue;
    const double d = li - (double(lam(v)) - double(v));
    log_p += std::log(std::abs(d + md)) - std::log(std::abs(d));
  }
  return std::exp(log_p);
}

PmTailBound p_m_tail_bound(const ZwParams& params, Row k, int level_n) {
  if (level_n < 1) throw ArgumentError("p_m_tail_bound: level must be at least 1");
  const Complex z = params.z(), w = params.w();
  const double A = std::abs(double(k) - z.real()) + std::abs(z.imag());
  const double C = (w + double(level_n) + 1.0 + double(k)).real();
  PmTailBound out;
  out.a = A + 1.0;
  out.c = C + 1.0;
  if (!(C > 0.0)) throw DomainError("p_m_tail_bound: Re(w + N + 1 + k) must be positive");
  out.prefactor = A * A / (C * C);
  out.convergent = out.c - 2.0 * out.a > 0.0;
  if (!out.convergent) {
    out.gauss = out.series = out.bound = kInf;
    return out;
  }
  out.gauss = gauss_2f1_at_one(out.a, out.a, out.c).real();
  out.series = series_2f1_at_one(out.a, out.a, out.c).real();
  out.bound = out.prefactor * out.gauss;
  return out;
}

}  // namespace gtzw
