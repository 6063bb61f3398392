#pragma once

// Exact arithmetic substrate: rationals, scalar polynomials over Q, constant
// rational matrices, N x N matrix polynomials and matrix rational functions
// with a scalar denominator.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mvxop {

using Rat = mpq_class;

/// Parses "p/q" or "p" (decimal digits, optional sign). Floats are rejected.
Rat parse_rat(std::string_view text);

/// Canonical "p/q" form, always with an explicit denominator.
std::string format_rat(const Rat& q);

/// Rising factorial (a)_k = a(a+1)...(a+k-1), (a)_0 = 1.
Rat pochhammer(const Rat& a, unsigned k);

Rat factorial(unsigned k);

double to_double(const Rat& q);

// ---------------------------------------------------------------------------

/// Polynomial over Q in ascending coefficient order; trailing zeros trimmed.
class Poly {
 public:
  Poly() = default;
  Poly(const Rat& c);  // NOLINT(google-explicit-constructor): constants promote
  Poly(int c) : Poly(Rat(c)) {}  // NOLINT(google-explicit-constructor)
  explicit Poly(std::vector<Rat> coeffs);

  static Poly x();
  static Poly monomial(unsigned k, const Rat& c = 1);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rat>& coeffs() const { return c_; }
  /// Coefficient of x^k (zero beyond the degree).
  Rat coeff(std::size_t k) const;
  Rat lead() const;

  Rat eval(const Rat& at) const;
  Poly derivative(unsigned order = 1) const;
  Poly monic() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rat& s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rat& s) { return a *= s; }
  friend Poly operator*(const Rat& s, Poly a) { return a *= s; }
  friend Poly operator*(Poly a, int s) { return a *= Rat(s); }
  friend Poly operator*(int s, Poly a) { return a *= Rat(s); }
  friend Poly operator-(Poly a);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<Rat> c_;
};

/// a = q*b + r with deg r < deg b. Throws std::domain_error if b == 0.
std::pair<Poly, Poly> poly_divrem(const Poly& a, const Poly& b);

/// Exact quotient; throws std::domain_error when the remainder is nonzero.
Poly poly_exact_div(const Poly& a, const Poly& b);

/// Monic gcd; gcd(0, 0) = 0.
Poly poly_gcd(Poly a, Poly b);

Poly poly_pow(const Poly& p, unsigned k);

// ---------------------------------------------------------------------------

/// Dense rational matrix (constant coefficients).
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols);
  explicit Mat(std::size_t n) : Mat(n, n) {}

  static Mat identity(std::size_t n);
  static Mat diag(const std::vector<Rat>& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Mat transpose() const;
  Mat inverse() const;  // throws std::domain_error when singular
  Rat det() const;
  bool is_zero() const;
  bool is_symmetric() const;
  bool is_lower_triangular() const;
  /// Sylvester test on exact leading principal minors.
  bool is_positive_definite() const;
  Rat max_abs() const;

  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  Mat& operator*=(const Rat& s);
  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(const Mat& a, const Mat& b);
  friend Mat operator*(Mat a, const Rat& s) { return a *= s; }
  friend Mat operator*(const Rat& s, Mat a) { return a *= s; }
  friend bool operator==(const Mat& a, const Mat& b) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

/// Solves A X = B exactly (A square, nonsingular). Throws std::domain_error.
Mat solve(const Mat& a, const Mat& b);

// ---------------------------------------------------------------------------

/// N x N matrix whose entries are polynomials over Q.
class MatPoly {
 public:
  MatPoly() = default;
  explicit MatPoly(std::size_t n);

  static MatPoly identity(std::size_t n);
  static MatPoly constant(const Mat& m);
  static MatPoly scalar(std::size_t n, const Poly& p);
  /// Builds sum_k coeffs[k] x^k.
  static MatPoly from_coeffs(const std::vector<Mat>& coeffs);

  std::size_t size() const { return n_; }
  Poly& operator()(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }

  /// Max entry degree; -1 for the zero matrix.
  int degree() const;
  bool is_zero() const;
  Mat coeff(std::size_t k) const;
  Mat lead() const;
  Mat eval(const Rat& at) const;
  MatPoly derivative(unsigned order = 1) const;
  MatPoly transpose() const;
  bool is_lower_triangular() const;

  MatPoly& operator+=(const MatPoly& o);
  MatPoly& operator-=(const MatPoly& o);
  MatPoly& operator*=(const Poly& s);
  friend MatPoly operator+(MatPoly a, const MatPoly& b) { return a += b; }
  friend MatPoly operator-(MatPoly a, const MatPoly& b) { return a -= b; }
  friend MatPoly operator-(MatPoly a);
  friend MatPoly operator*(const MatPoly& a, const MatPoly& b);
  friend MatPoly operator*(MatPoly a, const Poly& s) { return a *= s; }
  friend MatPoly operator*(const Poly& s, MatPoly a) { return a *= s; }
  friend MatPoly operator*(const Mat& a, const MatPoly& b) { return MatPoly::constant(a) * b; }
  friend MatPoly operator*(const MatPoly& a, const Mat& b) { return a * MatPoly::constant(b); }
  friend bool operator==(const MatPoly& a, const MatPoly& b) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Poly> e_;
};

/// Exact determinant. Cofactor expansion for N <= 4, fraction-free Bareiss otherwise.
Poly mat_det(const MatPoly& p);
Poly det_cofactor(const MatPoly& p);
Poly det_bareiss(const MatPoly& p);

/// Classical adjoint: P adj(P) = adj(P) P = det(P) Id.
MatPoly mat_adjugate(const MatPoly& p);

/// Largest |coefficient| over all entries, as a double (for residual reports).
double max_abs_coeff(const MatPoly& p);
double max_abs_coeff(const Poly& p);

// ---------------------------------------------------------------------------

/// Matrix rational function num(x) / den(x) with a scalar denominator.
/// Stored reduced: gcd(den, entries of num) = 1 and den monic.
class RatMatFun {
 public:
  RatMatFun() = default;
  explicit RatMatFun(MatPoly num);
  RatMatFun(MatPoly num, Poly den);

  const MatPoly& num() const { return num_; }
  const Poly& den() const { return den_; }
  std::size_t size() const { return num_.size(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  /// Throws std::domain_error unless the denominator is constant.
  MatPoly to_matpoly() const;

  RatMatFun derivative(unsigned order = 1) const;

  friend RatMatFun operator+(const RatMatFun& a, const RatMatFun& b);
  friend RatMatFun operator-(const RatMatFun& a, const RatMatFun& b);
  friend RatMatFun operator*(const RatMatFun& a, const RatMatFun& b);
  friend RatMatFun operator*(const MatPoly& a, const RatMatFun& b);
  friend RatMatFun operator*(const RatMatFun& a, const MatPoly& b);
  friend RatMatFun operator*(const Rat& s, const RatMatFun& a);
  /// Cross-multiplied comparison, independent of representation.
  friend bool operator==(const RatMatFun& a, const RatMatFun& b);

 private:
  void normalize();
  MatPoly num_;
  Poly den_{1};
};

}  // namespace mvxop
