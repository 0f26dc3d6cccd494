#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "gtzw/signature.hpp"

namespace gtzw {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Levels above this are served by log_weyl_dimension only.
inline constexpr int kExactDimensionMaxLevel = 60;

/// Dim_N(lam) = prod_{u<v} (lam_u - lam_v + v - u) / (v - u), exactly.
/// Throws ArgumentError above kExactDimensionMaxLevel.
BigInt weyl_dimension(const Signature& lam);

/// log Dim_N(lam), any level.
double log_weyl_dimension(const Signature& lam);

/// Number of paths from level 1 to lam, by dynamic programming over levels.
/// Independent of the Weyl product; used as its oracle.
BigInt count_paths_to(const Signature& lam);

/// Dim(lam') / Dim(lam) where lam' has row i incremented, as a product over
/// the other rows (each factor involves only lam_p - p and lam_i - i).
double dimension_ratio_row_increment(const Signature& lam, int i);
BigRational dimension_ratio_row_increment_exact(const Signature& lam, int i);

}  // namespace gtzw
