#include "mvxop/fourier.hpp"

#include <sstream>
#include <stdexcept>

namespace mvxop {

namespace {

Check exact(const RatMatFun& got, const RatMatFun& expect, const std::string& what) {
  Check c;
  const RatMatFun diff = got - expect;
  c.ok = diff.is_zero();
  c.residual = c.ok ? 0.0 : max_abs_coeff(diff.num());
  c.detail = what + (c.ok ? ": exact" : ": mismatch");
  return c;
}

Check op_equal(const RightDiffOp& a, const RightDiffOp& b, const std::string& what) {
  Check c;
  c.ok = a == b;
  c.residual = c.ok ? 0 : 1;
  c.detail = what + (c.ok ? ": exact" : ": mismatch");
  return c;
}

/// p(-y - s) as a polynomial in y
Poly reflect_shift(const Poly& p, const Rat& s) {
  const Poly arg = Poly(std::vector<Rat>{-s, Rat(-1)});
  Poly r;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) r = r * arg + Poly(*it);
  return r;
}

Poly shift_arg(const Poly& p, const Rat& s) {
  const Poly arg = Poly(std::vector<Rat>{s, Rat(1)});
  Poly r;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) r = r * arg + Poly(*it);
  return r;
}

}  // namespace

SeqOp ttr_operator(const Model& md, unsigned n) {
  const TTRCoeffs t = ttr(md.family, n);
  return {Mat::identity(md.p.N), t.B, t.C};
}

Mat chi_factor(const Model& md, unsigned n) {
  return gamma_n(md.p, n) - Mat::identity(md.p.N) * md.p.lambda();
}

SeqOp chi(const Model& md, const SeqOp& m, unsigned n) {
  const Mat g = chi_factor(md, n);
  return {g * m.plus, g * m.zero, g * m.minus};
}

SeqOp chi_hat(const Model& md, const SeqOp& m, unsigned n) {
  SeqOp r{m.plus * chi_factor(md, n + 1), m.zero * chi_factor(md, n), Mat(md.p.N)};
  if (n > 0) r.minus = m.minus * chi_factor(md, n - 1);
  return r;
}

MatPoly apply_seq(const SeqOp& op, const std::vector<MatPoly>& q, unsigned n) {
  MatPoly r = op.plus * q.at(n + 1) + op.zero * q.at(n);
  if (n > 0) r += op.minus * q.at(n - 1);
  return r;
}

RightDiffOp xi_of_x(const Model& md) {
  const RightDiffOp x = RightDiffOp::multiply(MatPoly::scalar(md.p.N, Poly::x()));
  return compose(compose(md.B, x), md.A);
}

Check verify_ttr_operator(const Model& md, unsigned n) {
  std::vector<MatPoly> p;
  for (const auto& d : md.family) p.push_back(d.P);
  return exact(RatMatFun(apply_seq(ttr_operator(md, n), p, n)), RatMatFun(p.at(n) * Poly::x()), "M . P_n = x P_n");
}

Check verify_diagram(const Model& md, unsigned n) {
  std::vector<MatPoly> ph;
  for (const auto& d : md.xfamily) ph.push_back(d.Phat);
  const SeqOp m = chi(md, ttr_operator(md, n), n);
  return exact(apply_right(xi_of_x(md), ph.at(n)), RatMatFun(apply_seq(m, ph, n)),
               "P_hat_n . (B x A) = (Gamma_n - lambda) M . P_hat_n");
}

Check verify_xi_round_trip(const Model& md) {
  const RightDiffOp x = RightDiffOp::multiply(MatPoly::scalar(md.p.N, Poly::x()));
  const RightDiffOp shifted = md.T0 - md.p.lambda();
  const RightDiffOp lhs = compose(md.A, compose(xi_of_x(md), md.B));
  const RightDiffOp rhs = compose(shifted, compose(x, shifted));
  Check c = op_equal(lhs, rhs, "A (B x A) B = (T0 - lambda) x (T0 - lambda)");
  std::ostringstream os;
  os << "; B x A has order " << xi_of_x(md).order();
  c.detail += os.str();
  return c;
}

Check verify_chi_round_trip(const Model& md, unsigned n) {
  std::vector<MatPoly> p;
  for (const auto& d : md.family) p.push_back(d.P);
  const SeqOp m = ttr_operator(md, n);
  const SeqOp twice = chi_hat(md, chi(md, m, n), n);
  const RightDiffOp x = RightDiffOp::multiply(MatPoly::scalar(md.p.N, Poly::x()));
  const RightDiffOp shifted = md.T0 - md.p.lambda();
  return exact(RatMatFun(apply_seq(twice, p, n)), apply_right(compose(shifted, compose(x, shifted)), p.at(n)),
               "(chi_hat chi)(M) . P_n = P_n . (T0 - lambda) x (T0 - lambda)");
}

Check verify_scalar_recurrence(const Model& md, unsigned n) {
  if (md.p.N != 1) throw std::invalid_argument("verify_scalar_recurrence: N = 1 only");
  const SeqOp h = chi_hat(md, ttr_operator(md, n), n);
  const Rat a = md.p.nu + 1, nn(n), m(md.p.m);
  const Rat up = -nn - a - 1 + m, mid = (-nn - a + m) * (2 * nn + a + 1), down = (-nn - a + 1 + m) * nn * (nn + a);
  Check c;
  c.ok = h.plus(0, 0) == up && h.zero(0, 0) == mid && h.minus(0, 0) == down;
  c.residual = c.ok ? 0 : 1;
  c.detail = std::string("scalar three-term form with parameter nu + 1: ") + (c.ok ? "matches" : "differs");
  return c;
}

std::vector<Poly> cdh_q(const Rat& alpha, unsigned m, unsigned K) {
  std::vector<Poly> q{Poly(1)};
  const Poly y = Poly::x();
  for (unsigned n = 0; n < K; ++n) {
    const Rat nn(n), mm(m);
    const Rat up = -nn - alpha - 1 + mm;
    Poly rhs = y * q[n] - Poly((-nn - alpha + mm) * (2 * nn + alpha + 1)) * q[n];
    if (n > 0) rhs -= Poly((-nn - alpha + 1 + mm) * nn * (nn + alpha)) * q[n - 1];
    if (up == 0) throw std::domain_error("cdh_q: vanishing leading recurrence coefficient");
    q.push_back(rhs * Rat(1 / up));
  }
  return q;
}

std::vector<Poly> cdh_S_recurrence(const Rat& a, const Rat& b, const Rat& c, unsigned K) {
  // normalized s_n = S_n / ((a+b)_n (a+c)_n):
  // -(a^2 + t) s_n = A_n s_(n+1) - (A_n + C_n) s_n + C_n s_(n-1)
  std::vector<Poly> s{Poly(1)};
  const Poly t = Poly::x();
  for (unsigned n = 0; n < K; ++n) {
    const Rat nn(n);
    const Rat an = (nn + a + b) * (nn + a + c), cn = nn * (nn + b + c - 1);
    Poly rhs = -(Poly(a * a) + t) * s[n] + Poly(an + cn) * s[n];
    if (n > 0) rhs -= Poly(cn) * s[n - 1];
    s.push_back(rhs * Rat(1 / an));
  }
  for (unsigned n = 0; n <= K; ++n) s[n] *= pochhammer(a + b, n) * pochhammer(a + c, n);
  return s;
}

Poly cdh_S_explicit(const Rat& a, const Rat& b, const Rat& c, unsigned n) {
  // (a+b)_n (a+c)_n 3F2(-n, a+ix, a-ix; a+b, a+c; 1) with (a+ix)_k (a-ix)_k = prod_(l<k) ((a+l)^2 + t)
  Poly sum;
  Poly prod(1);
  const Poly t = Poly::x();
  for (unsigned k = 0; k <= n; ++k) {
    const Rat coef = pochhammer(Rat(-static_cast<long>(n)), k) / (pochhammer(a + b, k) * pochhammer(a + c, k) * factorial(k));
    sum += prod * coef;
    const Rat al = a + k;
    prod *= t + Poly(al * al);
  }
  return sum * (pochhammer(a + b, n) * pochhammer(a + c, n));
}

CdhResult cdh_check(const Rat& alpha, unsigned m, unsigned K) {
  if (alpha <= m) throw std::invalid_argument("cdh_check: alpha > m required");
  const Rat a = alpha / 2, b = alpha / 2 - m, c = alpha / 2 + 1;
  const auto q = cdh_q(alpha, m, K);
  const auto s = cdh_S_recurrence(a, b, c, K);
  CdhResult r;
  r.ok = true;
  r.shifted_plus_form = true;
  std::ostringstream os;
  for (unsigned n = 0; n <= K; ++n) {
    const Rat scale = (n % 2 ? Rat(-1) : Rat(1)) / pochhammer(alpha + 1 - m, n);
    const bool same_s = s[n] == cdh_S_explicit(a, b, c, n);
    bool pointwise = true, plus_form = true;
    for (unsigned k = 0; k <= n + 1; ++k) {
      const Rat y(static_cast<long>(k) * 3 - 2, 7);
      pointwise = pointwise && q[n].eval(y) == scale * s[n].eval(-y - a * a);
      plus_form = plus_form && q[n].eval(y) == scale * s[n].eval(y + a * a);
    }
    const bool as_poly = q[n] == reflect_shift(s[n], a * a) * scale;
    if (!(same_s && pointwise && as_poly)) {
      r.ok = false;
      os << "n=" << n << " mismatch; ";
    }
    r.shifted_plus_form = r.shifted_plus_form && plus_form && q[n] == shift_arg(s[n], a * a) * scale;
    if (r.ok) r.max_n = n;
  }
  os << (r.ok ? "q_n(y) = (-1)^n/(alpha+1-m)_n S_n(-y-a^2) for n <= " : "agreement up to n = ") << r.max_n;
  r.detail = os.str();
  return r;
}

}  // namespace mvxop
