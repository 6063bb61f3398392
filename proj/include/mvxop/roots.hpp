#pragma once

// Polynomial root localization: Aberth-Ehrlich iteration in fixed MPFR
// precision and exact Sturm sequences over Q.

#include "mvxop/algebra.hpp"

#include <complex>
#include <vector>

namespace mvxop {

struct RootOptions {
  /// Working precision; rounded up to 128, 256, 512 or 1024 bits.
  unsigned precision_bits = 256;
  unsigned max_iterations = 2000;
};

struct RootResult {
  std::vector<std::complex<double>> roots;
  /// |q(z)| / sum |a_i| |z|^i per root, evaluated in working precision.
  std::vector<double> residuals;
  unsigned iterations = 0;
  unsigned precision_bits = 0;
  bool converged = false;
  /// Residual threshold 2^(-bits/2) used for `converged`.
  double threshold = 0;
};

/// All deg(q) complex roots (zero roots are split off exactly). Throws
/// std::runtime_error when the iteration does not converge.
RootResult find_roots(const Poly& q, const RootOptions& opt = {});

/// Natural log of |q| for a nonzero rational, robust to huge magnitudes.
double log_abs(const Rat& q);

/// Best rational approximation with denominator at most max_den.
Rat rationalize(double v, long max_den = 1000000);

// ---------------------------------------------------------------------------

/// p, p', then negated remainders, each rescaled by a positive constant.
std::vector<Poly> sturm_sequence(const Poly& p);
/// Sign changes of the sequence at a point.
int sign_changes_at(const std::vector<Poly>& seq, const Rat& at);
/// Sign changes at +infinity.
int sign_changes_at_infinity(const std::vector<Poly>& seq);
/// Number of distinct real roots in (a, b].
int sturm_count(const std::vector<Poly>& seq, const Rat& a, const Rat& b);
/// Number of distinct real roots.
int count_real_roots(const Poly& p);
/// Number of distinct real roots in [0, inf).
int count_nonnegative_roots(const Poly& p);
/// Cauchy bound: every root satisfies |z| < 1 + max |a_i / a_n|.
Rat cauchy_bound(const Poly& p);

}  // namespace mvxop
