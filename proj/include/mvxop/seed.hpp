#pragma once

// Seed matrices F_m, the gauge polynomial Upsilon_m = x det F_m, the cleared
// log-derivative Phi and the Darboux intertwiners A_m, B_m, T1.

#include "mvxop/laguerre.hpp"

#include <complex>
#include <utility>
#include <vector>

namespace mvxop {

struct SeedData {
  unsigned m = 0;
  MatPoly F;
  Poly detF;
  Poly Upsilon;
  /// phi^-1 phi' Upsilon = -nu detF - adj(F) J F + x adj(F) F'
  MatPoly Phi;
};

/// c_{i,j,k} with 1 <= j <= i <= N (zero above the diagonal).
Rat seed_coeff(const Params& p, std::size_t i, std::size_t j, unsigned k);
MatPoly seed_matrix(const Params& p);
/// Product of the scalar 1F1(-m; 1-nu-k; x) factors with their prefactors.
Poly det_F_closed_form(const Params& p);
/// Diagonal factor 1F1(-m; 1-nu-k; x), k from 1.
Poly hyp1f1_factor(const Params& p, std::size_t k);

/// Builds the seed and asserts mat_det(F) equals the closed form (std::logic_error).
SeedData build_seed(const Params& p);
/// Seed data for an arbitrary lower-triangular F (no closed-form check).
SeedData seed_from_matrix(const Params& p, MatPoly F);
MatPoly log_derivative_poly(const Params& p, const MatPoly& F, const Poly& detF);

/// The seed equation multiplied through by x; returns the residual matrix.
MatPoly seed_residual(const Params& p, const MatPoly& F);
bool verify_seed(const Params& p, const MatPoly& F);
bool verify_seed(const Params& p);

/// A_m = d . Upsilon - Phi
RightDiffOp build_Am(const SeedData& s);
/// B_m = Upsilon^-1 (d . x + M1 x + M2 + phi^-1 phi' x)
RightDiffOp build_Bm(const Params& p, const SeedData& s);
/// T1 = B_m A_m + lambda (B_m applied first)
RightDiffOp build_T1(const Params& p, const RightDiffOp& a, const RightDiffOp& b);

struct IndicialResult {
  Poly polynomial;                               // in the exponent variable
  std::vector<std::pair<Rat, unsigned>> exact;   // rational roots with multiplicity
  std::vector<std::complex<double>> numeric;     // roots of the remaining factor
};

/// Roots of det(mu(mu - 1) + mu B1 + B2).
IndicialResult indicial_exponents(const Mat& b1, const Mat& b2);

struct PositivityCertificate {
  bool coefficients_positive = false;  // every 1F1 factor has positive coefficients
  int sturm_nonnegative_roots = -1;    // distinct roots of detF in [0, inf)
  bool holds() const { return coefficients_positive || sturm_nonnegative_roots == 0; }
};

/// Certifies that detF has no roots on [0, inf).
PositivityCertificate certify_detF(const Params& p, const SeedData& s, bool run_sturm = true);

}  // namespace mvxop
