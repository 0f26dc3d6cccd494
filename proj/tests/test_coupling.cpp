#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "gtzw/coupling.hpp"

using gtzw::BernoulliProduct;
using gtzw::BigRational;
using gtzw::Cell;
using Dist = gtzw::FiniteBinaryDistribution<double>;
using QDist = gtzw::FiniteBinaryDistribution<BigRational>;

namespace {

// Random mu whose conditionals never exceed nu's marginals.
Dist dominated_random(const std::vector<double>& nu, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = static_cast<int>(nu.size());
  Dist d{n, std::vector<double>(std::size_t(1) << n, 0.0)};
  d.probs[0] = 1.0;
  for (int m = 1; m <= n; ++m) {
    const Cell bit = Cell(1) << (m - 1);
    for (Cell a = 0; a < bit; ++a) {
      const double p = nu[m - 1] * u(rng);
      d.probs[a | bit] = d.probs[a] * p;
      d.probs[a] *= 1.0 - p;
    }
  }
  return d;
}

template <class T>
void check_coupling(const gtzw::CouplingTable<T>& eta, const gtzw::FiniteBinaryDistribution<T>& mu,
                    const gtzw::FiniteBinaryDistribution<T>& nu) {
  CHECK(eta.monotone_support());
  const auto l = eta.left(), r = eta.right();
  for (std::size_t a = 0; a < mu.probs.size(); ++a) {
    CHECK(std::abs(double(l.probs[a] - mu.probs[a])) <= 1e-12);
    CHECK(std::abs(double(r.probs[a] - nu.probs[a])) <= 1e-12);
  }
}

}  // namespace

TEST_CASE("bit strings") {
  CHECK(gtzw::cell_to_string(0b0110, 4) == "0110");
  CHECK(gtzw::cell_to_string(0b0001, 4) == "1000");
  CHECK(gtzw::cell_from_string("1000") == 1u);
  CHECK_THROWS_AS(gtzw::cell_from_string("10x"), gtzw::ArgumentError);
}

TEST_CASE("up-set counts are the Dedekind numbers") {
  CHECK(gtzw::upsets(1).size() == 3);
  CHECK(gtzw::upsets(2).size() == 6);
  CHECK(gtzw::upsets(3).size() == 20);
  CHECK(gtzw::upsets(4).size() == 168);
}

TEST_CASE("upset_probability") {
  const auto d = BernoulliProduct<double>{{0.3, 0.6}}.dense(2);
  CHECK(gtzw::upset_probability(d, 0b1111) == doctest::Approx(1.0));
  CHECK(gtzw::upset_probability(d, 0) == 0.0);
  CHECK(gtzw::upset_probability(d, 0b1010) == doctest::Approx(0.3));  // a_1 = 1
  CHECK(gtzw::upset_probability(d, 0b0011, gtzw::SetOrientation::down) == doctest::Approx(0.4));
  CHECK_THROWS_AS(gtzw::upset_probability(d, 0b0001), gtzw::ArgumentError);
}

TEST_CASE("one-coordinate coupling") {
  const Dist mu{1, {0.7, 0.3}}, nu{1, {0.5, 0.5}};
  const auto eta = gtzw::build_coupling(mu, nu, 1);
  CHECK(eta.mass.at({1u, 1u}) == doctest::Approx(0.3));
  CHECK(eta.mass.at({0u, 0u}) == doctest::Approx(0.5));
  CHECK(eta.mass.at({0u, 1u}) == doctest::Approx(0.2));
}

TEST_CASE("identical laws couple on the diagonal") {
  std::mt19937_64 rng(5);
  const auto mu = dominated_random({0.4, 0.9, 0.2}, rng);
  const auto eta = gtzw::build_coupling(mu, mu, 3);
  for (const auto& [ab, m] : eta.mass) {
    CHECK(ab.first == ab.second);
    CHECK(m == doctest::Approx(mu.probs[ab.first]).epsilon(1e-14));
  }
}

TEST_CASE("two-coordinate Bernoulli example") {
  const auto mu = BernoulliProduct<double>{{0.2, 0.3}}.dense(2);
  const auto nu = BernoulliProduct<double>{{0.4, 0.5}}.dense(2);
  check_coupling(gtzw::build_coupling(mu, nu, 2), mu, nu);
}

TEST_CASE("hypothesis failure is reported with the history") {
  const auto mu = Dist::point_mass(2, 0b11);
  const BernoulliProduct<double> nu{{0.5, 0.5}};
  CHECK_FALSE(gtzw::dominance_hypothesis_check(mu, nu, 2));
  CHECK_THROWS_AS(gtzw::build_coupling(mu, nu.dense(2), 2), gtzw::HypothesisViolation);
  CHECK(gtzw::dominance_hypothesis_check(nu.dense(2), nu, 2));
  CHECK(gtzw::stochastic_order_bruteforce(Dist::point_mass(2, 0), nu.dense(2)));
}

TEST_CASE("random dominated pairs: exact marginals, monotone support, order") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 8;
    std::vector<double> p(static_cast<std::size_t>(n));
    for (auto& x : p) x = u(rng);
    const BernoulliProduct<double> nu{p};
    const auto mu = dominated_random(p, rng);
    REQUIRE(gtzw::dominance_hypothesis_check(mu, nu, n));
    const auto dense = nu.dense(n);
    const auto eta = gtzw::build_coupling(mu, dense, n);
    check_coupling(eta, mu, dense);
    if (n >= 2) {
      const auto shorter = gtzw::build_coupling(mu.marginal(n - 1), dense.marginal(n - 1), n - 1);
      const auto proj = eta.project(n - 1);
      for (const auto& [ab, m] : shorter.mass) CHECK(proj.mass.at(ab) == doctest::Approx(m).epsilon(1e-13));
    }
    if (n <= 4) {
      CHECK(gtzw::stochastic_order_bruteforce(mu, dense));
      for (auto up : gtzw::upsets(n)) {
        const std::uint64_t down = ~std::uint64_t(up) & ((std::uint64_t(1) << (1u << n)) - 1);
        CHECK(gtzw::upset_probability(mu, down, gtzw::SetOrientation::down) + 1e-12 >=
              gtzw::upset_probability(dense, down, gtzw::SetOrientation::down));
      }
    }
  }
}

TEST_CASE("exact rational coupling") {
  const BernoulliProduct<BigRational> nu{{BigRational(1, 2), BigRational(2, 3), BigRational(1, 3)}};
  QDist mu{3, std::vector<BigRational>(8, BigRational(1, 8))};
  CHECK_FALSE(gtzw::dominance_hypothesis_check(mu, nu, 3));
  const BernoulliProduct<BigRational> wide{{BigRational(1, 2), BigRational(2, 3), BigRational(5, 6)}};
  REQUIRE(gtzw::dominance_hypothesis_check(mu, wide, 3));
  const auto eta = gtzw::build_coupling(mu, wide.dense(3), 3);
  CHECK(eta.left().probs == mu.probs);
  CHECK(eta.right().probs == wide.dense(3).probs);
  CHECK(eta.monotone_support());
  CHECK(gtzw::stochastic_order_bruteforce(mu, wide.dense(3)));
}

TEST_CASE("hypothesis implies order on a small rational grid") {
  const int d = 3;
  for (int n = 1; n <= 2; ++n) {
    const int cells = 1 << n;
    std::vector<int> parts(static_cast<std::size_t>(cells), 0);
    // every composition of d into `cells` parts
    std::function<void(int, int)> rec = [&](int idx, int left) {
      if (idx == cells - 1) {
        parts[static_cast<std::size_t>(idx)] = left;
        QDist mu{n, {}};
        for (int x : parts) mu.probs.push_back(BigRational(x, d));
        std::vector<int> q(static_cast<std::size_t>(n), 0);
        std::function<void(int)> bern = [&](int i) {
          if (i == n) {
            BernoulliProduct<BigRational> nu;
            for (int x : q) nu.p.push_back(BigRational(x, d));
            if (gtzw::dominance_hypothesis_check(mu, nu, n))
              CHECK(gtzw::stochastic_order_bruteforce(mu, nu.dense(n)));
            return;
          }
          for (int x = 0; x <= d; ++x) {
            q[static_cast<std::size_t>(i)] = x;
            bern(i + 1);
          }
        };
        bern(0);
        return;
      }
      for (int x = 0; x <= left; ++x) {
        parts[static_cast<std::size_t>(idx)] = x;
        rec(idx + 1, left - x);
      }
    };
    rec(0, d);
  }
}
