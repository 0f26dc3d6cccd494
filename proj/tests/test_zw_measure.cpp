#include <doctest.h>

#include <cmath>
#include <map>

#include "gtzw/dimension.hpp"
#include "gtzw/errors.hpp"
#include "gtzw/gibbs.hpp"
#include "gtzw/zw_measure.hpp"

using gtzw::Complex;
using gtzw::Row;
using gtzw::Signature;
using gtzw::ZwParams;

namespace {

const ZwParams kBase(0.5, 0.3);

double brute_log_mass(const Signature& mu, const ZwParams& p, Row top, Row bottom) {
  double m = -INFINITY;
  gtzw::for_each_extension(mu, top, bottom, [&](const Signature& lam) {
    const double v = gtzw::log_unnormalized_density(lam, p);
    m = std::max(m, v) + std::log1p(std::exp(-std::abs(m - v)));
  });
  return m;
}

}  // namespace

TEST_CASE("admissibility") {
  CHECK_THROWS_AS(ZwParams(2.0, 0.3), gtzw::DomainError);
  CHECK_THROWS_AS(ZwParams(0.5, -1.0), gtzw::DomainError);
  CHECK_THROWS_AS(ZwParams(0.2, -0.8), gtzw::DomainError);
  CHECK_NOTHROW(ZwParams(Complex(2.0, 0.1), 0.3));
  CHECK_NOTHROW(ZwParams(0.2, -0.6));
}

TEST_CASE("level-one density and the Dim term") {
  const double expect = -gtzw::log_abs_gamma_sq(1.5) - gtzw::log_abs_gamma_sq(1.3);
  CHECK(gtzw::log_unnormalized_density(Signature{0}, kBase) == doctest::Approx(expect).epsilon(1e-14));
  for (Row x = -5; x <= 5; ++x)
    CHECK(gtzw::log_unnormalized_density(Signature{x}, kBase) == gtzw::log_row_factors(Signature{x}, kBase));
}

TEST_CASE("density symmetry under (z, w) <-> (w, z) and lam -> -reverse(lam)") {
  const ZwParams p(Complex(0.5, 0.5), 0.25);
  for (int n = 1; n <= 3; ++n)
    for (const auto& s : gtzw::enumerate_signatures(n, -2, 2))
      CHECK(gtzw::log_unnormalized_density(s, p) ==
            doctest::Approx(gtzw::log_unnormalized_density(s.reversed_negated(), p.swapped())).epsilon(1e-12));
}

TEST_CASE("extension cells carry the full level-(N+1) density") {
  const Signature mu{2, 0, -1};
  int cells = 0;
  gtzw::sum_extensions(mu, kBase, 1e-3, 1'000'000, [&](std::span<const Row> rows, double lw) {
    const Signature lam(std::vector<Row>(rows.begin(), rows.end()));
    CHECK(gtzw::interlaces(mu, lam));
    CHECK(lw == doctest::Approx(gtzw::log_unnormalized_density(lam, kBase)).epsilon(1e-11));
    ++cells;
  });
  CHECK(cells > 0);
}

TEST_CASE("factorized mass equals brute-force summation over the same caps") {
  for (const auto& mu : {Signature{0}, Signature{1, -1}, Signature{3, 1, 1, 0}}) {
    const auto s = gtzw::sum_extensions(mu, kBase, 1e-6, 10'000'000);
    CHECK(s.log_mass == doctest::Approx(brute_log_mass(mu, kBase, s.top_cap, s.bottom_cap)).epsilon(1e-11));
    CHECK(s.tail_mass_bound <= 1e-6);
  }
}

TEST_CASE("coherency examples") {
  CHECK(gtzw::coherency_residual(Signature{0}, kBase, 1e-12) <= 1e-10);
  const ZwParams p(Complex(0.5, 0.5), 0.25);
  const double r = gtzw::coherency_residual(Signature{3, -1}, p, 1e-12);
  CHECK(r <= 1e-10);
  const double r_sym = gtzw::coherency_residual(Signature{1, -3}, p.swapped(), 1e-12);
  CHECK(std::abs(r - r_sym) <= 1e-12);
}

TEST_CASE("coherency at deeper levels") {
  const ZwParams p(1.3, 0.7);
  for (const auto& mu : {Signature{2, 2, 0}, Signature{1, 0, 0, -2}, Signature{3, 1, 0, -1, -1}})
    CHECK(gtzw::coherency_residual(mu, p, 1e-12) <= 1e-10);
}

TEST_CASE("transition distribution invariants and top-row decay") {
  gtzw::SamplerConfig cfg;
  cfg.eps_tail = 1e-8;
  const auto tr = gtzw::transition_distribution(Signature{0}, kBase, cfg);
  double total = 0.0;
  std::map<Row, double> top_row;  // lam = (m, 0)
  for (std::size_t k = 0; k < tr.support.size(); ++k) {
    CHECK(gtzw::interlaces(tr.source, tr.support[k]));
    total += std::exp(tr.log_probs[k]);
    if (tr.support[k](2) == 0) top_row[tr.support[k](1)] = tr.log_probs[k];
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tr.tail_mass_bound <= 1e-8);
  cfg.max_support = 1000;
  CHECK_THROWS_AS(gtzw::transition_distribution(Signature{0}, kBase, cfg), gtzw::ResourceError);
  for (Row m = 5; m + 1 <= tr.top_cap; ++m) CHECK(top_row[m + 1] < top_row[m]);
}

TEST_CASE("transition is unchanged when the parameter pair is relabelled identically") {
  gtzw::SamplerConfig cfg;
  const ZwParams a(0.5, 0.3), b(0.5, 0.3);
  const auto ta = gtzw::transition_distribution(Signature{1, 0}, a, cfg);
  const auto tb = gtzw::transition_distribution(Signature{1, 0}, b, cfg);
  CHECK(ta.support == tb.support);
  CHECK(ta.log_probs == tb.log_probs);
}

TEST_CASE("two-route level-2 marginal sums to one") {
  const auto law = gtzw::level_one_law(kBase, 1e-12);
  const double log_r1 = gtzw::log_normalizer_ratio(1, kBase, 1e-13);
  double total = 0.0, dropped = 0.0;
  for (std::size_t t = 0; t < law.probs.size(); ++t) {
    if (law.probs[t] < 1e-10) {
      dropped += law.probs[t];
      continue;
    }
    const Signature mu{law.lo + Row(t)};
    const auto s = gtzw::sum_extensions(mu, kBase, 1e-10, 1'000'000'000);
    total += law.probs[t] * std::exp(s.log_mass - gtzw::log_unnormalized_density(mu, kBase) - log_r1);
  }
  CHECK(std::abs(total + dropped - 1.0) <= 1e-8);
}

TEST_CASE("p_m closed form equals the direct density quotient") {
  const Signature mu{3, 1, 0};
  const Signature lam{4, 1, 0, -2};  // content-0 addable box of mu+ is (2, 2)
  const auto box = gtzw::addable_box_with_content(mu, 0);
  REQUIRE(box.has_value());
  CHECK(box->row == 2);
  CHECK(box->col == 2);
  CHECK(gtzw::p_m_ratio(mu, lam, 2, 2, 0, kBase) == 1.0);
  for (Row m = 1; m <= 2; ++m) {
    const double direct = std::exp(gtzw::log_unnormalized_density(lam.with_row(2, 1 + m), kBase) -
                                   gtzw::log_unnormalized_density(lam, kBase));
    CHECK(gtzw::p_m_ratio(mu, lam, 2, 2, m, kBase) == doctest::Approx(direct).epsilon(1e-10));
  }
  CHECK_THROWS_AS(gtzw::p_m_ratio(mu, lam, 2, 2, 3, kBase), gtzw::ArgumentError);
  CHECK_THROWS_AS(gtzw::p_m_ratio(mu, lam, 1, 4, 1, kBase), gtzw::ArgumentError);
}

TEST_CASE("Gamma part of the p_m tail is dominated by the Gauss-formula bound") {
  const ZwParams p(Complex(0.5, 0.2), 0.3);
  for (int N : {10, 20, 40}) {
    for (Row k : {0, 1, 2}) {
      const auto b = gtzw::p_m_tail_bound(p, k, N);
      REQUIRE(b.convergent);
      CHECK(std::abs(b.gauss - b.series) <= 1e-9 * std::max(1.0, std::abs(b.gauss)));
      double sum = 0.0;
      for (Row m = 1; m < 100000; ++m) {
        const double md = double(m), kd = double(k);
        const double lg = gtzw::log_abs_gamma_sq(p.z() - kd + 1.0) - gtzw::log_abs_gamma_sq(p.z() - kd + 1.0 - md) +
                          gtzw::log_abs_gamma_sq(p.w() + double(N) + 1.0 + kd) -
                          gtzw::log_abs_gamma_sq(p.w() + double(N) + 1.0 + kd + md);
        sum += std::exp(lg);
      }
      CHECK(sum <= b.bound);
    }
  }
}

TEST_CASE("conditional_row_tail matches brute-force conditioning") {
  const Signature mu{2, 0, 0, -1};
  const Signature lam{3, 1, 0, 0, -2};
  for (int i : {1, 2, 5}) {
    const Row lo = i == 1 ? 2 : (i == 5 ? -20000 : 0);
    const Row hi = i == 1 ? 20000 : (i == 5 ? -1 : 2);
    double total = 0.0, hit = 0.0;
    for (Row x = lo; x <= hi; ++x) {
      const double v = std::exp(gtzw::log_unnormalized_density(lam.with_row(i, x), kBase));
      total += v;
      if (x >= lam(i)) hit += v;
    }
    CHECK(gtzw::conditional_row_tail(mu, lam, i, lam(i), kBase) == doctest::Approx(hit / total).epsilon(1e-9));
  }
  CHECK(gtzw::conditional_row_tail(mu, lam, 3, 0, kBase) == 1.0);
}

TEST_CASE("sampling determinism and interlacing") {
  gtzw::SamplerConfig cfg;
  cfg.seed = 42;
  for (auto mode : {gtzw::SamplerMode::exact_enumeration, gtzw::SamplerMode::gibbs}) {
    cfg.mode = mode;
    const auto a = gtzw::sample_path(6, kBase, cfg, 3);
    const auto b = gtzw::sample_path(6, kBase, cfg, 3);
    CHECK(a == b);
    CHECK(a.end_level() == 6);
  }
  cfg.mode = gtzw::SamplerMode::gibbs;
  for (std::uint64_t k = 0; k < 1000; ++k) CHECK_NOTHROW(gtzw::sample_path(5, kBase, cfg, k));
  const auto one = gtzw::sample_path(1, kBase, cfg, 0);
  CHECK(one.size() == 1);
}

TEST_CASE("gibbs and exact transitions agree in total variation") {
  gtzw::SamplerConfig exact_cfg;
  exact_cfg.eps_tail = 1e-10;
  const Signature mu{1, 0};
  const auto tr = gtzw::transition_distribution(mu, kBase, exact_cfg);
  std::map<Signature, double> exact;
  for (std::size_t k = 0; k < tr.support.size(); ++k) exact[tr.support[k]] = std::exp(tr.log_probs[k]);

  gtzw::SamplerConfig cfg;
  cfg.mode = gtzw::SamplerMode::gibbs;
  constexpr int kDraws = 100000;
  std::map<Signature, double> emp;
  for (int t = 0; t < kDraws; ++t) {
    auto rng = gtzw::StreamRng::for_stream(7, std::uint64_t(t), 2);
    emp[gtzw::gibbs_sample_level(mu, kBase, cfg, rng)] += 1.0 / kDraws;
  }
  double tv = 0.0;
  for (const auto& [s, p] : exact) {
    auto it = emp.find(s);
    tv += std::abs(p - (it == emp.end() ? 0.0 : it->second));
  }
  for (const auto& [s, p] : emp)
    if (!exact.count(s)) tv += p;
  tv *= 0.5;
  MESSAGE("gibbs vs exact TV = " << tv);
  CHECK(tv <= 0.01);
}
