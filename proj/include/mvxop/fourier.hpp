#pragma once

// Maps between differential operators and difference operators in n for the
// exceptional family, and the scalar continuous dual Hahn cross-check.

#include "mvxop/exceptional.hpp"

namespace mvxop {

/// Coefficients at a fixed n of M = delta . plus + zero + delta^-1 . minus,
/// acting on a sequence Q as plus Q_(n+1) + zero Q_n + minus Q_(n-1).
struct SeqOp {
  Mat plus, zero, minus;
};

/// The three-term recurrence operator (Id, B_n, C_n) at n.
SeqOp ttr_operator(const Model& md, unsigned n);
/// Gamma_n - lambda
Mat chi_factor(const Model& md, unsigned n);
/// (Gamma_n - lambda) M
SeqOp chi(const Model& md, const SeqOp& m, unsigned n);
/// M (Gamma_n - lambda): coefficient j picks up Gamma_(n+j) - lambda.
SeqOp chi_hat(const Model& md, const SeqOp& m, unsigned n);
/// sum_j coefficient_j Q_(n+j) for a family of matrix polynomials.
MatPoly apply_seq(const SeqOp& op, const std::vector<MatPoly>& q, unsigned n);

/// B x A, with x acting as right multiplication.
RightDiffOp xi_of_x(const Model& md);

/// x P_n = M . P_n
Check verify_ttr_operator(const Model& md, unsigned n);
/// P_hat_n . (B x A) = (Gamma_n - lambda)(P_hat_(n+1) + B_n P_hat_n + C_n P_hat_(n-1)), needs n + 1 <= nmax.
Check verify_diagram(const Model& md, unsigned n);
/// A (B x A) B = (T0 - lambda) x (T0 - lambda)
Check verify_xi_round_trip(const Model& md);
/// (chi_hat . chi)(M) applied to P equals P_n . (T0 - lambda) x (T0 - lambda).
Check verify_chi_round_trip(const Model& md, unsigned n);
/// N = 1: the chi_hat coefficients of the recurrence operator are the scalar three-term form
/// with Laguerre parameter nu + 1.
Check verify_scalar_recurrence(const Model& md, unsigned n);

/// q_n from (-n-a-1+m) q_(n+1) + (-n-a+m)(2n+a+1) q_n + (-n-a+1+m) n (n+a) q_(n-1) = y q_n, q_0 = 1.
std::vector<Poly> cdh_q(const Rat& alpha, unsigned m, unsigned K);
/// S_n(t; a, b, c) (t = x^2) from the standard continuous dual Hahn recurrence.
std::vector<Poly> cdh_S_recurrence(const Rat& a, const Rat& b, const Rat& c, unsigned K);
/// S_n(t; a, b, c) from its terminating hypergeometric sum.
Poly cdh_S_explicit(const Rat& a, const Rat& b, const Rat& c, unsigned n);

struct CdhResult {
  bool ok = false;
  unsigned max_n = 0;
  /// Whether q_n(y) = (-1)^n / (alpha+1-m)_n S_n(y + a^2) also holds (it does only for n = 0).
  bool shifted_plus_form = false;
  std::string detail;
};

/// Checks q_n(y) = (-1)^n / (alpha+1-m)_n S_n(-y - a^2; a, b, c), a = alpha/2, b = alpha/2 - m, c = alpha/2 + 1,
/// at deg + 1 rational points for every n <= K, and the two constructions of S_n against each other.
CdhResult cdh_check(const Rat& alpha, unsigned m, unsigned K);

}  // namespace mvxop
