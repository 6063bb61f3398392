#pragma once

// Differential operators acting from the right on matrix functions, and the
// quasi-weight class V(x) x^(nu - s) e^(-x).

#include "mvxop/algebra.hpp"

#include <vector>

namespace mvxop {

/// D = sum_j d^j . C_j acting as P . D = sum_j P^(j) C_j.
class RightDiffOp {
 public:
  RightDiffOp() = default;
  /// Trailing zero coefficients are dropped (the zero operator keeps C_0 = 0).
  explicit RightDiffOp(std::vector<RatMatFun> coeffs);

  static RightDiffOp identity(std::size_t n);
  /// Order-zero operator: right multiplication by f.
  static RightDiffOp multiply(const RatMatFun& f);
  static RightDiffOp multiply(const MatPoly& f) { return multiply(RatMatFun(f)); }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  std::size_t size() const { return c_.empty() ? 0 : c_.front().size(); }
  const RatMatFun& coeff(std::size_t j) const { return c_.at(j); }
  const std::vector<RatMatFun>& coeffs() const { return c_; }
  bool is_polynomial() const;

  friend RightDiffOp operator+(const RightDiffOp& a, const RightDiffOp& b);
  friend RightDiffOp operator-(const RightDiffOp& a, const RightDiffOp& b);
  /// D + s . Id
  friend RightDiffOp operator+(const RightDiffOp& a, const Rat& s);
  friend RightDiffOp operator-(const RightDiffOp& a, const Rat& s) { return a + Rat(-s); }
  /// Coefficientwise comparison with cross-multiplied denominators.
  friend bool operator==(const RightDiffOp& a, const RightDiffOp& b);

 private:
  std::vector<RatMatFun> c_;
};

RatMatFun apply_right(const RightDiffOp& d, const RatMatFun& p);
RatMatFun apply_right(const RightDiffOp& d, const MatPoly& p);

/// Operator of "apply d2, then d1": P . compose(d2, d1) = (P . d2) . d1.
RightDiffOp compose(const RightDiffOp& d2, const RightDiffOp& d1);

std::size_t binomial(std::size_t n, std::size_t k);

// ---------------------------------------------------------------------------

/// W(x) = V(x) x^(nu - s) e^(-x) for a fixed rational nu.
class QuasiWeight {
 public:
  QuasiWeight() = default;
  QuasiWeight(MatPoly v, long shift, Rat nu) : v_(std::move(v)), s_(shift), nu_(std::move(nu)) {}

  const MatPoly& v() const { return v_; }
  long shift() const { return s_; }
  const Rat& nu() const { return nu_; }
  std::size_t size() const { return v_.size(); }

  /// Same function with V not divisible by x (the zero weight is left alone).
  QuasiWeight normalized() const;
  /// The polynomial factor when written over shift s (requires s >= shift()).
  MatPoly v_at_shift(long s) const;

  QuasiWeight derivative() const;
  QuasiWeight transpose() const { return {v_.transpose(), s_, nu_}; }

  friend QuasiWeight operator*(const MatPoly& left, const QuasiWeight& w) { return {left * w.v_, w.s_, w.nu_}; }
  friend QuasiWeight operator*(const QuasiWeight& w, const MatPoly& right) { return {w.v_ * right, w.s_, w.nu_}; }
  friend QuasiWeight operator*(const Poly& s, const QuasiWeight& w) { return {s * w.v_, w.s_, w.nu_}; }
  friend QuasiWeight operator+(const QuasiWeight& a, const QuasiWeight& b);
  friend QuasiWeight operator-(const QuasiWeight& a, const QuasiWeight& b);
  /// Equal as functions on (0, inf).
  friend bool operator==(const QuasiWeight& a, const QuasiWeight& b);

 private:
  MatPoly v_;
  long s_ = 0;
  Rat nu_;
};

/// Largest |coefficient| of a - b after aligning shifts (0 when equal).
double quasi_residual(const QuasiWeight& a, const QuasiWeight& b);

}  // namespace mvxop
