#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "gtzw/dimension.hpp"
#include "gtzw/errors.hpp"

namespace gtzw {

// Points of {0,1}^n are bit masks: bit i-1 holds coordinate i. Written as
// strings they read a_1 a_2 ... a_n from left to right.
using Cell = std::uint32_t;

inline constexpr int kMaxDenseCoordinates = 24;

std::string cell_to_string(Cell a, int n);
Cell cell_from_string(const std::string& s);
inline bool cell_leq(Cell a, Cell b) { return (a & ~b) == 0; }

template <class T>
struct FiniteBinaryDistribution {
  int n = 0;
  std::vector<T> probs;  // length 2^n

  static FiniteBinaryDistribution point_mass(int n, Cell a) {
    FiniteBinaryDistribution d{n, std::vector<T>(std::size_t(1) << n, T(0))};
    d.probs[a] = T(1);
    return d;
  }

  /// Law of the first m coordinates.
  FiniteBinaryDistribution marginal(int m) const {
    if (m < 0 || m > n) throw ArgumentError("marginal: coordinate count out of range");
    FiniteBinaryDistribution d{m, std::vector<T>(std::size_t(1) << m, T(0))};
    const Cell mask = (Cell(1) << m) - 1;
    for (std::size_t a = 0; a < probs.size(); ++a) d.probs[a & mask] += probs[a];
    return d;
  }

  T total() const {
    T s(0);
    for (const auto& p : probs) s += p;
    return s;
  }

  void validate(double tol = 1e-12) const {
    if (n < 0 || n > kMaxDenseCoordinates) throw ArgumentError("binary distribution: n out of range");
    if (probs.size() != (std::size_t(1) << n)) throw ArgumentError("binary distribution: expected 2^n masses");
    for (const auto& p : probs)
      if (p < T(0)) throw ArgumentError("binary distribution: negative mass");
    const T s = total() - T(1);
    if (s > T(tol) || s < T(-tol)) throw ArgumentError("binary distribution: masses must sum to 1");
  }
};

/// Product of Bernoulli(p_i) marginals; usable at any length.
template <class T>
struct BernoulliProduct {
  std::vector<T> p;

  int size() const { return static_cast<int>(p.size()); }

  FiniteBinaryDistribution<T> dense(int n) const {
    if (n > size() || n > kMaxDenseCoordinates) throw ArgumentError("BernoulliProduct: n out of range");
    FiniteBinaryDistribution<T> d{n, std::vector<T>(std::size_t(1) << n, T(1))};
    for (std::size_t a = 0; a < d.probs.size(); ++a)
      for (int i = 0; i < n; ++i) d.probs[a] *= (a >> i) & 1 ? p[i] : T(1) - p[i];
    return d;
  }
};

template <class T>
struct CouplingTable {
  int n = 0;
  std::map<std::pair<Cell, Cell>, T> mass;

  FiniteBinaryDistribution<T> left() const { return side(true); }
  FiniteBinaryDistribution<T> right() const { return side(false); }

  bool monotone_support() const {
    for (const auto& [ab, m] : mass)
      if (m != T(0) && !cell_leq(ab.first, ab.second)) return false;
    return true;
  }

  /// Image under (a, b) -> (first m coordinates of a, first m of b).
  CouplingTable project(int m) const {
    CouplingTable out{m, {}};
    const Cell mask = (Cell(1) << m) - 1;
    for (const auto& [ab, v] : mass) out.mass[{ab.first & mask, ab.second & mask}] += v;
    return out;
  }

 private:
  FiniteBinaryDistribution<T> side(bool first) const {
    FiniteBinaryDistribution<T> d{n, std::vector<T>(std::size_t(1) << n, T(0))};
    for (const auto& [ab, v] : mass) d.probs[first ? ab.first : ab.second] += v;
    return d;
  }
};

/// True iff mu(x_m = 1 | x_1..x_{m-1} = a) <= nu(x_m = 1) for every m <= n
/// and every history a of positive mu-mass.
template <class T>
bool dominance_hypothesis_check(const FiniteBinaryDistribution<T>& mu, const BernoulliProduct<T>& nu, int n) {
  if (n > mu.n || n > nu.size()) throw ArgumentError("dominance_hypothesis_check: n out of range");
  for (int m = 1; m <= n; ++m) {
    const auto head = mu.marginal(m);
    const Cell half = Cell(1) << (m - 1);
    for (Cell a = 0; a < half; ++a) {
      const T zero = head.probs[a];
      const T one = head.probs[a | half];
      const T hist = zero + one;
      if (!(hist > T(0))) continue;
      if (one > nu.p[m - 1] * hist) return false;
    }
  }
  return true;
}

/// Builds eta coordinate by coordinate: an atom (a, b) of mass e splits into
/// (a0, b0) e(1-q), (a0, b1) e(q-p), (a1, b1) e p, with p = mu(1 | a) and
/// q = nu(1 | b). Throws HypothesisViolation when q < p on some atom.
template <class T>
CouplingTable<T> build_coupling(const FiniteBinaryDistribution<T>& mu, const FiniteBinaryDistribution<T>& nu,
                                int n) {
  if (n < 0 || n > mu.n || n > nu.n) throw ArgumentError("build_coupling: n out of range");
  CouplingTable<T> eta{0, {{{0u, 0u}, T(1)}}};
  for (int m = 1; m <= n; ++m) {
    const auto mh = mu.marginal(m);
    const auto nh = nu.marginal(m);
    const Cell bit = Cell(1) << (m - 1);
    CouplingTable<T> next{m, {}};
    for (const auto& [ab, e] : eta.mass) {
      if (e == T(0)) continue;
      const auto [a, b] = ab;
      const T ma = mh.probs[a] + mh.probs[a | bit];
      const T nb = nh.probs[b] + nh.probs[b | bit];
      const T p = ma > T(0) ? T(mh.probs[a | bit] / ma) : T(0);
      const T q = nb > T(0) ? T(nh.probs[b | bit] / nb) : T(0);
      if (q < p)
        throw HypothesisViolation(cell_to_string(a, m - 1), "build_coupling: nu(1 | b) < mu(1 | a) for history " +
                                                                cell_to_string(a, m - 1) + " / " +
                                                                cell_to_string(b, m - 1));
      const T e00 = e * (T(1) - q);
      const T e01 = e * (q - p);
      const T e11 = e * p;
      if (e00 != T(0)) next.mass[{a, b}] += e00;
      if (e01 != T(0)) next.mass[{a, b | bit}] += e01;
      if (e11 != T(0)) next.mass[{a | bit, b | bit}] += e11;
    }
    eta = std::move(next);
  }
  return eta;
}

/// All up-sets of {0,1}^n as membership masks over the 2^n cells (n <= 4).
const std::vector<std::uint32_t>& upsets(int n);

enum class SetOrientation { up, down };

/// Mass of a monotone set given as a membership mask over cells.
template <class T>
T upset_probability(const FiniteBinaryDistribution<T>& d, std::uint64_t members,
                    SetOrientation orientation = SetOrientation::up);
bool is_monotone_set(int n, std::uint64_t members, SetOrientation orientation);

/// mu(U) <= nu(U) + tol for every up-set U of {0,1}^n, n <= 4. Rational
/// inputs are compared exactly.
template <class T>
bool stochastic_order_bruteforce(const FiniteBinaryDistribution<T>& mu, const FiniteBinaryDistribution<T>& nu,
                                 double tol = std::is_floating_point_v<T> ? 1e-12 : 0.0) {
  if (mu.n != nu.n || mu.n > 4) throw ArgumentError("stochastic_order_bruteforce: needs equal n <= 4");
  for (auto u : upsets(mu.n))
    if (upset_probability(mu, u) > upset_probability(nu, u) + T(tol)) return false;
  return true;
}

template <class T>
T upset_probability(const FiniteBinaryDistribution<T>& d, std::uint64_t members, SetOrientation orientation) {
  if (d.n > 6) throw ArgumentError("upset_probability: membership mask supports n <= 6");
  if (!is_monotone_set(d.n, members, orientation)) throw ArgumentError("upset_probability: set is not monotone");
  T s(0);
  for (std::size_t a = 0; a < d.probs.size(); ++a)
    if ((members >> a) & 1) s += d.probs[a];
  return s;
}

using RationalBinaryDistribution = FiniteBinaryDistribution<BigRational>;

}  // namespace gtzw
