#include "gtzw/dimension.hpp"

#include <cmath>
#include <map>
#include <string>

#include "gtzw/errors.hpp"

namespace gtzw {

BigInt weyl_dimension(const Signature& lam) {
  const int n = lam.level();
  if (n > kExactDimensionMaxLevel) {
    throw ArgumentError("weyl_dimension: exact evaluation limited to level " +
                        std::to_string(kExactDimensionMaxLevel) + "; use log_weyl_dimension");
  }
  BigInt num = 1;
  BigInt den = 1;
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      num *= BigInt(lam(u) - lam(v) + v - u);
      den *= v - u;
    }
  }
  return num / den;
}

double log_weyl_dimension(const Signature& lam) {
  const int n = lam.level();
  double acc = 0.0;
  for (int u = 1; u <= n; ++u) {
    const double lu = static_cast<double>(lam(u) - u);
    for (int v = u + 1; v <= n; ++v) {
      acc += std::log(lu - static_cast<double>(lam(v) - v));
    }
  }
  for (int d = 1; d < n; ++d) acc -= static_cast<double>(n - d) * std::log(static_cast<double>(d));
  return acc;
}

namespace {

BigInt count_rec(const Signature& lam, std::map<Signature, BigInt>& memo) {
  if (lam.level() == 1) return 1;
  if (auto it = memo.find(lam); it != memo.end()) return it->second;
  BigInt total = 0;
  for (const auto& mu : enumerate_restrictions(lam)) total += count_rec(mu, memo);
  memo.emplace(lam, total);
  return total;
}

void check_increment(const Signature& lam, int i) {
  if (i < 1 || i > lam.level()) throw ArgumentError("row index out of range");
  if (i > 1 && lam(i - 1) < lam(i) + 1) {
    throw ArgumentError("incrementing row " + std::to_string(i) + " breaks the non-increasing order");
  }
}

}  // namespace

BigInt count_paths_to(const Signature& lam) {
  std::map<Signature, BigInt> memo;
  return count_rec(lam, memo);
}

double dimension_ratio_row_increment(const Signature& lam, int i) {
  check_increment(lam, i);
  const int n = lam.level();
  const double j = static_cast<double>(lam(i) + 1);
  double ratio = 1.0;
  for (int p = 1; p < i; ++p) {
    const double lp = static_cast<double>(lam(p) - p);
    ratio *= (lp - j + i) / (lp - (j - 1) + i);
  }
  for (int p = i + 1; p <= n; ++p) {
    const double lp = static_cast<double>(lam(p) - p);
    ratio *= (j - i - lp) / (j - i - 1 - lp);
  }
  return ratio;
}

BigRational dimension_ratio_row_increment_exact(const Signature& lam, int i) {
  check_increment(lam, i);
  const int n = lam.level();
  const Row j = lam(i) + 1;
  BigInt num = 1;
  BigInt den = 1;
  for (int p = 1; p < i; ++p) {
    const Row lp = lam(p) - p;
    num *= BigInt(lp - j + i);
    den *= BigInt(lp - (j - 1) + i);
  }
  for (int p = i + 1; p <= n; ++p) {
    const Row lp = lam(p) - p;
    num *= BigInt(j - i - lp);
    den *= BigInt(j - i - 1 - lp);
  }
  return BigRational(num, den);
}

}  // namespace gtzw
