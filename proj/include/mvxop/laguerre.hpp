#pragma once

// Matrix Laguerre weight, the second order operator T0, exact moments and the
// monic matrix orthogonal polynomials with their three-term recurrence.

#include "mvxop/algebra.hpp"
#include "mvxop/rightops.hpp"

#include <vector>

namespace mvxop {

struct Params {
  std::size_t N = 1;
  Rat alpha = Rat(7, 2);
  Rat nu = Rat(5, 2);
  std::vector<Rat> mu;     // empty means all ones
  std::vector<Rat> delta;  // empty means all ones
  unsigned m = 0;
  /// Skips the nu > max(0, m-1) requirement (the seed must still be defined).
  bool allow_small_nu = false;

  /// Fills defaults for mu and delta, then validates. Throws std::invalid_argument.
  Params& complete();
  void validate() const;
  Rat lambda() const { return alpha - m; }
  const Rat& mu_at(std::size_t i) const { return mu.at(i); }
};

/// Nilpotent subdiagonal matrix with (A)_{i,i-1} = -mu_i / mu_{i-1}.
Mat a_mu(const Params& p);
/// diag(1, ..., N)
Mat j_mat(std::size_t n);
Mat m1_mat(const Params& p);
Mat m2_mat(const Params& p);
Mat c_mat(const Params& p);
/// (-n + alpha - nu)(A + 1)^-1 - J
Mat gamma_n(const Params& p, unsigned n);

/// Classical L_n^(a)(x) with coefficient of x^k equal to (-1)^k (a+k+1)_(n-k) / ((n-k)! k!).
Poly scalar_laguerre(unsigned n, const Rat& a);

/// Unipotent lower-triangular L with L_ij = (mu_i/mu_j) L_(i-j)^(alpha+j), indices from 1.
MatPoly laguerre_L(const Params& p);
/// Polynomial inverse of laguerre_L.
MatPoly laguerre_L_inverse(const Params& p);

/// W = L diag(delta_i x^i) L^T x^nu e^-x as a quasi-weight with shift 0.
QuasiWeight build_weight(const Params& p);

/// S_k = int x^k W dx / Gamma(nu+1).
Mat moment(const Params& p, const MatPoly& v, unsigned k);
std::vector<Mat> moments(const Params& p, unsigned count);

/// T0 = d^2 . x + d . (M1 x + M2) + C.
RightDiffOp build_T0(const Params& p);

struct MVOPData {
  unsigned n = 0;
  MatPoly P;
  Mat H;      // rational part; the true norm is H * Gamma(nu+1)
  Mat Gamma;
};

/// Monic P_0 .. P_nmax from the block Hankel system.
/// When check_eigen is set, P_n . T0 = Gamma_n P_n is asserted (std::logic_error).
std::vector<MVOPData> mvop_family(const Params& p, unsigned nmax, bool check_eigen = true);
MVOPData monic_mvop(const Params& p, unsigned n, bool check_eigen = true);

struct TTRCoeffs {
  Mat B, C;
};

/// x P_n = P_(n+1) + B_n P_n + C_n P_(n-1), read off from family[n], family[n+1].
TTRCoeffs ttr(const std::vector<MVOPData>& family, unsigned n);
TTRCoeffs ttr(const Params& p, unsigned n);

/// Exact inner product int P W Q^T / Gamma(nu+1) for polynomial P, Q.
Mat inner_w(const Params& p, const MatPoly& P, const MatPoly& Q);

}  // namespace mvxop
