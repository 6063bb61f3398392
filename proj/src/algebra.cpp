#include "mvxop/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace mvxop {

Rat parse_rat(std::string_view text) {
  auto digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  const auto slash = body.find('/');
  const bool ok = slash == std::string_view::npos
                      ? digits(body)
                      : digits(body.substr(0, slash)) && digits(body.substr(slash + 1));
  if (!ok) throw std::invalid_argument("not an exact rational (expected p or p/q): '" + std::string(text) + "'");
  std::string s(text);
  if (s.front() == '+') s.erase(0, 1);
  Rat q;
  q.set_str(s, 10);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

std::string format_rat(const Rat& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

Rat pochhammer(const Rat& a, unsigned k) {
  Rat r = 1;
  for (unsigned i = 0; i < k; ++i) r *= a + i;
  return r;
}

Rat factorial(unsigned k) { return pochhammer(Rat(1), k); }

double to_double(const Rat& q) { return q.get_d(); }

// --- Poly -------------------------------------------------------------------

Poly::Poly(const Rat& c) {
  if (c != 0) c_.push_back(c);
}

Poly::Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::x() { return monomial(1); }

Poly Poly::monomial(unsigned k, const Rat& c) {
  std::vector<Rat> v(k + 1);
  v[k] = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rat Poly::coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rat(0); }

Rat Poly::lead() const { return c_.empty() ? Rat(0) : c_.back(); }

Rat Poly::eval(const Rat& at) const {
  Rat r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * at + *it;
  return r;
}

Poly Poly::derivative(unsigned order) const {
  if (order == 0) return *this;
  if (c_.size() <= order) return {};
  std::vector<Rat> d(c_.size() - order);
  for (std::size_t k = order; k < c_.size(); ++k) {
    Rat f = 1;
    for (unsigned i = 0; i < order; ++i) f *= static_cast<unsigned long>(k - i);
    d[k - order] = c_[k] * f;
  }
  return Poly(std::move(d));
}

Poly Poly::monic() const {
  if (is_zero()) return {};
  Rat inv = 1 / lead();
  return *this * inv;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rat& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rat> r(a.c_.size() + b.c_.size() - 1);
  Rat t;
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      mpq_mul(t.get_mpq_t(), a.c_[i].get_mpq_t(), b.c_[j].get_mpq_t());
      r[i + j] += t;
    }
  }
  return Poly(std::move(r));
}

Poly operator-(Poly a) {
  for (auto& c : a.c_) c = -c;
  return a;
}

std::pair<Poly, Poly> poly_divrem(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly(), a};
  std::vector<Rat> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  std::vector<Rat> q(r.size() - db);
  const Rat inv_lead = 1 / bc.back();
  Rat t;
  for (std::size_t k = r.size(); k-- > db;) {
    if (r[k] == 0) continue;
    const Rat f = r[k] * inv_lead;
    q[k - db] = f;
    for (std::size_t j = 0; j <= db; ++j) {
      mpq_mul(t.get_mpq_t(), f.get_mpq_t(), bc[j].get_mpq_t());
      r[k - db + j] -= t;
    }
  }
  r.resize(db);
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly poly_exact_div(const Poly& a, const Poly& b) {
  auto [q, r] = poly_divrem(a, b);
  if (!r.is_zero()) throw std::domain_error("polynomial division is not exact");
  return q;
}

Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = poly_divrem(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

Poly poly_pow(const Poly& p, unsigned k) {
  Poly r(1);
  for (unsigned i = 0; i < k; ++i) r *= p;
  return r;
}

// --- Mat --------------------------------------------------------------------

Mat::Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

Mat Mat::identity(std::size_t n) {
  Mat m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::diag(const std::vector<Rat>& d) {
  Mat m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Mat solve(const Mat& a, const Mat& b) {
  if (!a.is_square() || a.rows() != b.rows()) throw std::invalid_argument("solve: shape mismatch");
  const std::size_t n = a.rows(), m = b.cols();
  Mat l = a, r = b;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && l(piv, k) == 0) ++piv;
    if (piv == n) throw std::domain_error("solve: singular matrix");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(l(k, j), l(piv, j));
      for (std::size_t j = 0; j < m; ++j) std::swap(r(k, j), r(piv, j));
    }
    const Rat inv = 1 / l(k, k);
    for (std::size_t j = k; j < n; ++j) l(k, j) *= inv;
    for (std::size_t j = 0; j < m; ++j) r(k, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || l(i, k) == 0) continue;
      const Rat f = l(i, k);
      for (std::size_t j = k; j < n; ++j) l(i, j) -= f * l(k, j);
      for (std::size_t j = 0; j < m; ++j) r(i, j) -= f * r(k, j);
    }
  }
  return r;
}

Mat Mat::inverse() const { return solve(*this, identity(rows_)); }

Rat Mat::det() const {
  if (!is_square()) throw std::invalid_argument("det: non-square matrix");
  Mat l = *this;
  Rat d = 1;
  for (std::size_t k = 0; k < rows_; ++k) {
    std::size_t piv = k;
    while (piv < rows_ && l(piv, k) == 0) ++piv;
    if (piv == rows_) return 0;
    if (piv != k) {
      for (std::size_t j = 0; j < cols_; ++j) std::swap(l(k, j), l(piv, j));
      d = -d;
    }
    d *= l(k, k);
    for (std::size_t i = k + 1; i < rows_; ++i) {
      if (l(i, k) == 0) continue;
      const Rat f = l(i, k) / l(k, k);
      for (std::size_t j = k; j < cols_; ++j) l(i, j) -= f * l(k, j);
    }
  }
  return d;
}

bool Mat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rat& q) { return q == 0; });
}

bool Mat::is_symmetric() const { return is_square() && *this == transpose(); }

bool Mat::is_lower_triangular() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != 0) return false;
  return true;
}

bool Mat::is_positive_definite() const {
  if (!is_symmetric()) return false;
  for (std::size_t k = 1; k <= rows_; ++k) {
    Mat minor(k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = (*this)(i, j);
    if (minor.det() <= 0) return false;
  }
  return true;
}

Rat Mat::max_abs() const {
  Rat m = 0;
  for (const auto& q : a_) m = std::max<Rat>(m, abs(q));
  return m;
}

Mat& Mat::operator+=(const Mat& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Mat: shape mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

Mat& Mat::operator-=(const Mat& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Mat: shape mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

Mat& Mat::operator*=(const Rat& s) {
  for (auto& q : a_) q *= s;
  return *this;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("Mat: shape mismatch");
  Mat c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

// --- MatPoly ----------------------------------------------------------------

MatPoly::MatPoly(std::size_t n) : n_(n), e_(n * n) {}

MatPoly MatPoly::identity(std::size_t n) { return scalar(n, Poly(1)); }

MatPoly MatPoly::constant(const Mat& m) {
  if (!m.is_square()) throw std::invalid_argument("MatPoly: constant matrix must be square");
  MatPoly p(m.rows());
  for (std::size_t i = 0; i < p.n_; ++i)
    for (std::size_t j = 0; j < p.n_; ++j) p(i, j) = Poly(m(i, j));
  return p;
}

MatPoly MatPoly::scalar(std::size_t n, const Poly& s) {
  MatPoly p(n);
  for (std::size_t i = 0; i < n; ++i) p(i, i) = s;
  return p;
}

MatPoly MatPoly::from_coeffs(const std::vector<Mat>& coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("MatPoly: empty coefficient list");
  const std::size_t n = coeffs.front().rows();
  MatPoly p(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Rat> c(coeffs.size());
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k].rows() != n || coeffs[k].cols() != n) throw std::invalid_argument("MatPoly: ragged coefficients");
        c[k] = coeffs[k](i, j);
      }
      p(i, j) = Poly(std::move(c));
    }
  return p;
}

int MatPoly::degree() const {
  int d = -1;
  for (const auto& e : e_) d = std::max(d, e.degree());
  return d;
}

bool MatPoly::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const Poly& p) { return p.is_zero(); });
}

Mat MatPoly::coeff(std::size_t k) const {
  Mat m(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j).coeff(k);
  return m;
}

Mat MatPoly::lead() const {
  const int d = degree();
  return d < 0 ? Mat(n_) : coeff(static_cast<std::size_t>(d));
}

Mat MatPoly::eval(const Rat& at) const {
  Mat m(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j).eval(at);
  return m;
}

MatPoly MatPoly::derivative(unsigned order) const {
  MatPoly d(n_);
  for (std::size_t k = 0; k < e_.size(); ++k) d.e_[k] = e_[k].derivative(order);
  return d;
}

MatPoly MatPoly::transpose() const {
  MatPoly t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool MatPoly::is_lower_triangular() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (!(*this)(i, j).is_zero()) return false;
  return true;
}

MatPoly& MatPoly::operator+=(const MatPoly& o) {
  if (n_ != o.n_) throw std::invalid_argument("MatPoly: size mismatch");
  for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
  return *this;
}

MatPoly& MatPoly::operator-=(const MatPoly& o) {
  if (n_ != o.n_) throw std::invalid_argument("MatPoly: size mismatch");
  for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
  return *this;
}

MatPoly& MatPoly::operator*=(const Poly& s) {
  for (auto& e : e_) e *= s;
  return *this;
}

MatPoly operator-(MatPoly a) {
  for (auto& e : a.e_) e = -e;
  return a;
}

MatPoly operator*(const MatPoly& a, const MatPoly& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("MatPoly: size mismatch");
  MatPoly c(a.n_);
  for (std::size_t i = 0; i < a.n_; ++i)
    for (std::size_t k = 0; k < a.n_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < a.n_; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

namespace {

MatPoly minor_of(const MatPoly& p, std::size_t row, std::size_t col) {
  const std::size_t n = p.size();
  MatPoly m(n - 1);
  for (std::size_t i = 0, mi = 0; i < n; ++i) {
    if (i == row) continue;
    for (std::size_t j = 0, mj = 0; j < n; ++j) {
      if (j == col) continue;
      m(mi, mj++) = p(i, j);
    }
    ++mi;
  }
  return m;
}

}  // namespace

Poly det_cofactor(const MatPoly& p) {
  const std::size_t n = p.size();
  if (n == 0) return Poly(1);
  if (n == 1) return p(0, 0);
  if (n == 2) return p(0, 0) * p(1, 1) - p(0, 1) * p(1, 0);
  Poly d;
  for (std::size_t j = 0; j < n; ++j) {
    if (p(0, j).is_zero()) continue;
    Poly term = p(0, j) * det_cofactor(minor_of(p, 0, j));
    if (j % 2 == 0) d += term;
    else d -= term;
  }
  return d;
}

Poly det_bareiss(const MatPoly& p) {
  const std::size_t n = p.size();
  if (n == 0) return Poly(1);
  MatPoly m = p;
  Poly prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && m(piv, k).is_zero()) ++piv;
      if (piv == n) return {};
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = poly_exact_div(m(k, k) * m(i, j) - m(i, k) * m(k, j), prev);
      m(i, k) = Poly();
    }
    prev = m(k, k);
  }
  Poly d = m(n - 1, n - 1);
  return negate ? -d : d;
}

Poly mat_det(const MatPoly& p) { return p.size() <= 4 ? det_cofactor(p) : det_bareiss(p); }

MatPoly mat_adjugate(const MatPoly& p) {
  const std::size_t n = p.size();
  MatPoly adj(n);
  if (n == 1) {
    adj(0, 0) = Poly(1);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Poly c = mat_det(minor_of(p, j, i));
      adj(i, j) = (i + j) % 2 == 0 ? c : -c;
    }
  return adj;
}

double max_abs_coeff(const Poly& p) {
  double m = 0;
  for (const auto& c : p.coeffs()) m = std::max(m, std::fabs(c.get_d()));
  return m;
}

double max_abs_coeff(const MatPoly& p) {
  double m = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) m = std::max(m, max_abs_coeff(p(i, j)));
  return m;
}

// --- RatMatFun --------------------------------------------------------------

RatMatFun::RatMatFun(MatPoly num) : num_(std::move(num)), den_(1) {}

RatMatFun::RatMatFun(MatPoly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("RatMatFun: zero denominator");
  normalize();
}

void RatMatFun::normalize() {
  const std::size_t n = num_.size();
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (den_.degree() > 0) {
    Poly g = den_;
    for (std::size_t i = 0; i < n && g.degree() > 0; ++i)
      for (std::size_t j = 0; j < n && g.degree() > 0; ++j)
        if (!num_(i, j).is_zero()) g = poly_gcd(g, num_(i, j));
    if (g.degree() > 0) {
      den_ = poly_exact_div(den_, g);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) num_(i, j) = poly_exact_div(num_(i, j), g);
    }
  }
  const Rat c = den_.lead();
  if (c != 1) {
    const Rat inv = 1 / c;
    den_ *= inv;
    num_ *= Poly(inv);
  }
}

MatPoly RatMatFun::to_matpoly() const {
  if (!is_polynomial()) throw std::domain_error("RatMatFun: denominator is not constant");
  return num_;
}

RatMatFun RatMatFun::derivative(unsigned order) const {
  RatMatFun r = *this;
  for (unsigned k = 0; k < order; ++k) {
    if (r.is_polynomial()) {
      r = RatMatFun(r.num_.derivative());
      continue;
    }
    MatPoly n = r.num_.derivative() * r.den_ - r.num_ * r.den_.derivative();
    r = RatMatFun(std::move(n), r.den_ * r.den_);
  }
  return r;
}

RatMatFun operator+(const RatMatFun& a, const RatMatFun& b) {
  if (a.den_ == b.den_) return RatMatFun(a.num_ + b.num_, a.den_);
  const Poly g = poly_gcd(a.den_, b.den_);
  const Poly fa = poly_exact_div(b.den_, g), fb = poly_exact_div(a.den_, g);
  return RatMatFun(a.num_ * fa + b.num_ * fb, a.den_ * fa);
}

RatMatFun operator-(const RatMatFun& a, const RatMatFun& b) { return a + (Rat(-1) * b); }

RatMatFun operator*(const RatMatFun& a, const RatMatFun& b) { return RatMatFun(a.num_ * b.num_, a.den_ * b.den_); }

RatMatFun operator*(const MatPoly& a, const RatMatFun& b) { return RatMatFun(a * b.num_, b.den_); }

RatMatFun operator*(const RatMatFun& a, const MatPoly& b) { return RatMatFun(a.num_ * b, a.den_); }

RatMatFun operator*(const Rat& s, const RatMatFun& a) {
  RatMatFun r = a;
  r.num_ *= Poly(s);
  if (s == 0) r.den_ = Poly(1);
  return r;
}

bool operator==(const RatMatFun& a, const RatMatFun& b) {
  if (a.size() != b.size()) return false;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

}  // namespace mvxop
