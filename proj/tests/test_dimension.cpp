#include <doctest.h>

#include "gtzw/dimension.hpp"
#include "gtzw/errors.hpp"

using gtzw::BigInt;
using gtzw::Signature;

TEST_CASE("weyl_dimension small values") {
  CHECK(gtzw::weyl_dimension(Signature{0, 0, 0}) == 1);
  CHECK(gtzw::weyl_dimension(Signature{1, 0}) == 2);
  CHECK(gtzw::weyl_dimension(Signature{2, 1, 0}) == 8);
  CHECK(gtzw::weyl_dimension(Signature{7}) == 1);
}

TEST_CASE("count_paths_to by explicit enumeration") {
  CHECK(gtzw::count_paths_to(Signature{1, 0}) == 2);
  CHECK(gtzw::count_paths_to(Signature{5}) == 1);
  CHECK(gtzw::count_paths_to(Signature{1, 1}) == 1);
  CHECK(gtzw::count_paths_to(Signature{2, 1, 0}) == 8);
}

TEST_CASE("weyl_dimension equals the path count and is symmetric") {
  for (int n = 1; n <= 4; ++n) {
    for (const auto& s : gtzw::enumerate_signatures(n, -2, 2)) {
      CHECK(gtzw::weyl_dimension(s) == gtzw::count_paths_to(s));
      CHECK(gtzw::weyl_dimension(s) == gtzw::weyl_dimension(s.reversed_negated()));
    }
  }
}

TEST_CASE("log_weyl_dimension tracks the exact value") {
  const Signature big{10, 8, 7, 5, 4, 2, 0, -1, -3};
  const BigInt exact = gtzw::weyl_dimension(big);
  REQUIRE(exact < BigInt("1000000000000000"));
  const double want = std::log(exact.convert_to<double>());
  CHECK(std::abs(gtzw::log_weyl_dimension(big) - want) <= 1e-12 * std::abs(want));
  CHECK_THROWS_AS(gtzw::weyl_dimension(Signature::zeros(61)), gtzw::ArgumentError);
  CHECK(gtzw::log_weyl_dimension(Signature::zeros(200)) == doctest::Approx(0.0));
}

TEST_CASE("dimension_ratio_row_increment") {
  CHECK(gtzw::dimension_ratio_row_increment(Signature{1, 0}, 1) == doctest::Approx(1.5));
  CHECK(gtzw::dimension_ratio_row_increment(Signature{0}, 1) == 1.0);
  CHECK(gtzw::dimension_ratio_row_increment(Signature{1, 1, 0}, 3) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(gtzw::dimension_ratio_row_increment(Signature{1, 1, 0}, 2), gtzw::ArgumentError);
  for (int n = 1; n <= 4; ++n) {
    for (const auto& s : gtzw::enumerate_signatures(n, -2, 2)) {
      for (int i = 1; i <= n; ++i) {
        if (i > 1 && s(i - 1) == s(i)) continue;
        const auto exact = gtzw::dimension_ratio_row_increment_exact(s, i);
        const gtzw::BigRational quotient(gtzw::weyl_dimension(s.with_row(i, s(i) + 1)),
                                         gtzw::weyl_dimension(s));
        CHECK(exact == quotient);
      }
    }
  }
}
