#pragma once

#include <complex>
#include <cstdint>

namespace gtzw {

using Complex = std::complex<double>;

/// Throws DomainError if either component is NaN or infinite.
void require_finite(Complex s, const char* where);

/// Principal branch of log Gamma(s). Fixed 15-term Lanczos kernel for
/// Re(s) >= 1/2, reflection through log sin below. Throws PoleError at
/// s = 0, -1, -2, ...
Complex log_gamma_complex(Complex s);

/// log |Gamma(s)|^2 = 2 Re log Gamma(s).
double log_abs_gamma_sq(Complex s);

/// log (a)_m = log Gamma(a + m) - log Gamma(a); m = 0 gives 0.
/// Throws PoleError if one of a, a+1, ..., a+m-1 is a non-positive integer.
Complex log_pochhammer(Complex a, std::uint64_t m);

/// 2F1(a, b; c; 1) = Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)).
/// Requires Re(c - a - b) > 0.
Complex gauss_2f1_at_one(Complex a, Complex b, Complex c);

/// Defining series of 2F1(a, b; c; 1), summed term by term with an
/// asymptotic tail correction. Oracle for gauss_2f1_at_one.
Complex series_2f1_at_one(Complex a, Complex b, Complex c, double tol = 1e-12);

}  // namespace gtzw
