#pragma once

// Exceptional weight and polynomials obtained by the Darboux transformation,
// together with exact and quadrature checks of their defining identities.

#include "mvxop/quadrature.hpp"
#include "mvxop/seed.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mvxop {

/// W_hat = W / denom_scalar with denom_scalar = x detF^2.
struct XWeight {
  QuasiWeight base;
  Poly denom_scalar;

  /// W_hat relative to x^nu e^-x.
  RatMatFun density() const;
  /// Exact value at x0 > 0 without the factor x0^nu e^-x0.
  Mat eval(const Rat& x0) const;
};

/// Throws std::invalid_argument when detF has a root on [0, inf).
XWeight build_xweight(const Params& p, const SeedData& s);

struct XPolyData {
  unsigned n = 0;
  MatPoly Phat;  // P_n . A_m
  Mat Hhat;      // H_n (lambda - Gamma_n)^T, rational part as for H_n
};

XPolyData xpoly(const Params& p, const RightDiffOp& a, const MVOPData& d);

/// Everything needed for the checks at one parameter point.
struct Model {
  Params p;
  SeedData seed;
  RightDiffOp T0, A, B, T1;
  std::vector<MVOPData> family;  // P_0 .. P_(nmax+1)
  std::vector<XPolyData> xfamily;
  XWeight xweight;
  /// False only with allow_small_nu when detF vanishes on [0, inf); weight checks then throw.
  bool weight_ok = false;

  /// T1 is the expensive part at large m; without it the T1 checks throw.
  static Model build(const Params& p, unsigned nmax, bool with_T1 = true);
  bool has_T1() const { return T1.order() >= 0; }
  unsigned nmax() const { return static_cast<unsigned>(xfamily.size()) - 1; }
};

struct Check {
  bool ok = false;
  double residual = 0;
  std::string detail;
};

/// A B + lambda = T0 and A T1 = T0 A.
Check verify_factorization(const Model& md);
/// P_hat_n . B = (Gamma_n - lambda) P_n with an exact polynomial quotient.
Check verify_lowering(const Model& md, unsigned n, std::optional<Rat> lambda = std::nullopt);
/// P_hat_n . T1 = Gamma_n P_hat_n; `eigen` overrides Gamma_n.
Check verify_eigen_T1(const Model& md, unsigned n, std::optional<Mat> eigen = std::nullopt);
/// Second route: (Gamma_n - lambda) P_n . A + lambda P_hat_n = Gamma_n P_hat_n.
Check verify_eigen_two_route(const Model& md, unsigned n);
/// P_hat_n . B . A = (Gamma_n - lambda) P_hat_n
Check verify_BA(const Model& md, unsigned n);
/// Degree mN + n with invertible lower-triangular leading coefficient.
Check verify_xdegree(const Model& md, unsigned n);
/// H_hat = H_n (lambda - Gamma_n)^T = (lambda - Gamma_n) H_n, symmetric positive definite.
Check verify_xnorm(const Model& md, unsigned n);

/// Symmetry equations for d^2 . F2 + d . F1 + F0 against W, with the derived identity.
Check verify_symmetry(const QuasiWeight& w, const RightDiffOp& t);
Check verify_symmetry(const Model& md);
/// Pearson-type identity multiplied by Upsilon.
Check verify_pearson(const Model& md);
/// G W = W G^T with G = Phi F2 + Upsilon F1 / 2.
Check verify_pearson_symmetrized(const Model& md);

/// int P W_hat Q^T / Gamma(nu+1) by quadrature.
QuadResult inner_xweight(const Model& md, const MatPoly& P, const MatPoly& Q, const QuadOptions& opt = {});
/// Gram blocks of P_hat_0 .. P_hat_nmax against H_hat.
Check verify_orthogonality(const Model& md, unsigned nmax, double tol, const QuadOptions& opt = {});
/// <p . A, q>_W_hat = -<p, q . B>_W, both sides by quadrature, and for p = P_n, q = P_hat_k the
/// exact value delta_nk H_hat_n. `drop_x` removes the boundary factor x from W_hat.
Check verify_adjoint(const Model& md, const MatPoly& p, const MatPoly& q, double tol, const QuadOptions& opt = {},
                     bool drop_x = false);
Check verify_adjoint_mvop(const Model& md, unsigned n, unsigned k, double tol, const QuadOptions& opt = {});

struct DiagonalRoute {
  MatPoly Pd;        // diag of monic scalar Laguerre polynomials
  MatPoly Qhat;      // (Pd . A^d) L^-1
  Mat eigen;         // Qhat . T1_L = eigen Qhat
  std::vector<int> span_degree;  // per row: largest k with a nonzero component on P_k in Qhat . B
};

/// Diagonal operator L^-1 T0 L.
RightDiffOp diagonal_T0(const Params& p);
/// A^d = d . Upsilon - Phi^d with Phi^d = (phi^d)^-1 (phi^d)' Upsilon.
RightDiffOp diagonal_A(const Params& p, const SeedData& s);
/// L A^d L^-1 as an operator on the non-diagonal side.
RightDiffOp conjugated_A(const Params& p, const SeedData& s);
DiagonalRoute diagonal_route(const Model& md, unsigned n);
/// Checks the conjugated factorization, the eigen-equation and the route identity for Qhat_n.
Check verify_diagonal_exact(const Model& md, unsigned n);
/// Off-diagonal blocks of the Qhat Gram matrix relative to the diagonal blocks.
Check verify_diagonal_orthogonality(const Model& md, unsigned nmax, double tol, const QuadOptions& opt = {});

}  // namespace mvxop
