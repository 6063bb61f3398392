#include "mvxop/rightops.hpp"

#include <algorithm>
#include <stdexcept>

namespace mvxop {

RightDiffOp::RightDiffOp(std::vector<RatMatFun> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) throw std::invalid_argument("RightDiffOp: no coefficients");
  const std::size_t n = c_.front().size();
  for (const auto& c : c_)
    if (c.size() != n) throw std::invalid_argument("RightDiffOp: coefficient size mismatch");
  while (c_.size() > 1 && c_.back().is_zero()) c_.pop_back();
}

RightDiffOp RightDiffOp::identity(std::size_t n) { return multiply(MatPoly::identity(n)); }

RightDiffOp RightDiffOp::multiply(const RatMatFun& f) { return RightDiffOp(std::vector<RatMatFun>{f}); }

bool RightDiffOp::is_polynomial() const {
  return std::all_of(c_.begin(), c_.end(), [](const RatMatFun& c) { return c.is_polynomial(); });
}

RightDiffOp operator+(const RightDiffOp& a, const RightDiffOp& b) {
  if (a.size() != b.size()) throw std::invalid_argument("RightDiffOp: size mismatch");
  const std::size_t k = std::max(a.c_.size(), b.c_.size());
  std::vector<RatMatFun> c(k, RatMatFun(MatPoly(a.size())));
  for (std::size_t j = 0; j < a.c_.size(); ++j) c[j] = c[j] + a.c_[j];
  for (std::size_t j = 0; j < b.c_.size(); ++j) c[j] = c[j] + b.c_[j];
  return RightDiffOp(std::move(c));
}

RightDiffOp operator-(const RightDiffOp& a, const RightDiffOp& b) {
  std::vector<RatMatFun> neg;
  neg.reserve(b.c_.size());
  for (const auto& c : b.c_) neg.push_back(Rat(-1) * c);
  return a + RightDiffOp(std::move(neg));
}

RightDiffOp operator+(const RightDiffOp& a, const Rat& s) {
  return a + RightDiffOp::multiply(MatPoly::scalar(a.size(), Poly(s)));
}

bool operator==(const RightDiffOp& a, const RightDiffOp& b) {
  if (a.size() != b.size() || a.c_.size() != b.c_.size()) return false;
  for (std::size_t j = 0; j < a.c_.size(); ++j)
    if (!(a.c_[j] == b.c_[j])) return false;
  return true;
}

RatMatFun apply_right(const RightDiffOp& d, const RatMatFun& p) {
  if (p.size() != d.size()) throw std::invalid_argument("apply_right: size mismatch");
  RatMatFun acc(MatPoly(p.size()));
  RatMatFun deriv = p;
  for (int j = 0; j <= d.order(); ++j) {
    if (j > 0) deriv = deriv.derivative();
    if (!d.coeff(j).is_zero()) acc = acc + deriv * d.coeff(j);
  }
  return acc;
}

RatMatFun apply_right(const RightDiffOp& d, const MatPoly& p) {
  if (p.size() != d.size()) throw std::invalid_argument("apply_right: size mismatch");
  if (!d.is_polynomial()) return apply_right(d, RatMatFun(p));
  MatPoly acc(p.size());
  MatPoly deriv = p;
  for (int j = 0; j <= d.order(); ++j) {
    if (j > 0) deriv = deriv.derivative();
    acc += deriv * d.coeff(j).num();
  }
  return RatMatFun(acc);
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

RightDiffOp compose(const RightDiffOp& d2, const RightDiffOp& d1) {
  if (d2.size() != d1.size()) throw std::invalid_argument("compose: size mismatch");
  const std::size_t n = d2.size();
  const int k2 = d2.order(), k1 = d1.order();
  // derivs[j][t] = t-th derivative of the j-th coefficient of d2
  std::vector<std::vector<RatMatFun>> derivs(k2 + 1);
  for (int j = 0; j <= k2; ++j) {
    derivs[j].push_back(d2.coeff(j));
    for (int t = 1; t <= k1; ++t) derivs[j].push_back(derivs[j].back().derivative());
  }
  std::vector<RatMatFun> out(k1 + k2 + 1, RatMatFun(MatPoly(n)));
  for (int j = 0; j <= k2; ++j)
    for (int k = 0; k <= k1; ++k) {
      if (d1.coeff(k).is_zero()) continue;
      for (int l = 0; l <= k; ++l) {
        const RatMatFun& cj = derivs[j][k - l];
        if (cj.is_zero()) continue;
        out[j + l] = out[j + l] + Rat(static_cast<unsigned long>(binomial(k, l))) * (cj * d1.coeff(k));
      }
    }
  return RightDiffOp(std::move(out));
}

// ---------------------------------------------------------------------------

QuasiWeight QuasiWeight::normalized() const {
  if (v_.is_zero()) return *this;
  MatPoly v = v_;
  long s = s_;
  auto divisible_by_x = [](const MatPoly& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < p.size(); ++j)
        if (p(i, j).coeff(0) != 0) return false;
    return true;
  };
  while (divisible_by_x(v)) {
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) {
        auto c = v(i, j).coeffs();
        if (!c.empty()) c.erase(c.begin());
        v(i, j) = Poly(std::move(c));
      }
    --s;
  }
  return {v, s, nu_};
}

MatPoly QuasiWeight::v_at_shift(long s) const {
  if (s < s_) throw std::invalid_argument("QuasiWeight: cannot lower the shift without division");
  return v_ * Poly::monomial(static_cast<unsigned>(s - s_));
}

QuasiWeight QuasiWeight::derivative() const {
  const Poly x = Poly::x();
  MatPoly v = v_.derivative() * x + v_ * Poly(nu_ - s_) - v_ * x;
  return {v, s_ + 1, nu_};
}

namespace {

void require_same_nu(const QuasiWeight& a, const QuasiWeight& b) {
  if (a.nu() != b.nu() || a.size() != b.size()) throw std::invalid_argument("QuasiWeight: incompatible operands");
}

}  // namespace

QuasiWeight operator+(const QuasiWeight& a, const QuasiWeight& b) {
  require_same_nu(a, b);
  const long s = std::max(a.s_, b.s_);
  return {a.v_at_shift(s) + b.v_at_shift(s), s, a.nu_};
}

QuasiWeight operator-(const QuasiWeight& a, const QuasiWeight& b) {
  require_same_nu(a, b);
  const long s = std::max(a.s_, b.s_);
  return {a.v_at_shift(s) - b.v_at_shift(s), s, a.nu_};
}

bool operator==(const QuasiWeight& a, const QuasiWeight& b) { return (a - b).v().is_zero(); }

double quasi_residual(const QuasiWeight& a, const QuasiWeight& b) { return max_abs_coeff((a - b).v()); }

}  // namespace mvxop
