#pragma once

// Generalized Gauss-Laguerre quadrature for the probability measure
// x^nu e^-x dx / Gamma(nu+1) on (0, inf), in extended precision.

#include "mvxop/algebra.hpp"

#include <Eigen/Dense>

namespace mvxop {

struct QuadOptions {
  unsigned min_order = 64;
  unsigned max_order = 2048;
  /// Stop once successive orders agree to this fraction of the integral of |L M R^T|.
  double rel_tol = 1e-13;
};

struct QuadResult {
  Eigen::MatrixXd value;
  double error = 0;  // max entry difference between the last two orders
  unsigned order = 0;
};

/// int L(x) M(x) R(x)^T x^nu e^-x dx / Gamma(nu+1) by order doubling.
/// Throws std::runtime_error when max_order is reached without agreement.
QuadResult integrate(const Rat& nu, const RatMatFun& left, const RatMatFun& mid, const RatMatFun& right,
                     const QuadOptions& opt = {});

/// Nodes and weights as doubles (for inspection and tests).
void gauss_laguerre_rule(const Rat& nu, unsigned order, std::vector<double>& nodes, std::vector<double>& weights);

/// Relative deviation max|a - b| / max(max|b|, floor).
double rel_dev(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double floor = 0);
Eigen::MatrixXd to_eigen(const Mat& m);

}  // namespace mvxop
