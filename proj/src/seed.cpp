#include "mvxop/seed.hpp"

#include "mvxop/roots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mvxop {

Rat seed_coeff(const Params& p, std::size_t i, std::size_t j, unsigned k) {
  if (i < 1 || j < 1 || i > p.N || j > p.N) throw std::out_of_range("seed_coeff: index out of range");
  if (j > i) return 0;
  const Rat& a = p.alpha;
  const long li = static_cast<long>(i), lj = static_cast<long>(j);
  Rat pre = pochhammer(Rat(-li), static_cast<unsigned>(j)) * pochhammer(-a - li, static_cast<unsigned>(i - j)) * p.mu[0] /
            (li * pochhammer(a + 2, static_cast<unsigned>(i - 1)) * p.mu[j - 1]);
  if ((i - j) % 2 == 0) pre = -pre;  // (-1)^(i-j-1)
  const Rat den = pochhammer(1 - p.nu - li, k) * pochhammer(-a - li, k) * factorial(k);
  if (den == 0) throw std::domain_error("seed_coeff: vanishing Pochhammer denominator");
  return pre * pochhammer(Rat(-static_cast<long>(p.m)), k) * pochhammer(-a - lj, k) / den;
}

MatPoly seed_matrix(const Params& p) {
  MatPoly f(p.N);
  for (std::size_t i = 1; i <= p.N; ++i)
    for (std::size_t j = 1; j <= i; ++j) {
      std::vector<Rat> c(p.m + 1);
      for (unsigned k = 0; k <= p.m; ++k) c[k] = seed_coeff(p, i, j, k);
      f(i - 1, j - 1) = Poly(std::move(c));
    }
  return f;
}

Poly hyp1f1_factor(const Params& p, std::size_t k) {
  std::vector<Rat> c(p.m + 1);
  const Rat b = 1 - p.nu - static_cast<long>(k);
  for (unsigned j = 0; j <= p.m; ++j)
    c[j] = pochhammer(Rat(-static_cast<long>(p.m)), j) / (pochhammer(b, j) * factorial(j));
  return Poly(std::move(c));
}

Poly det_F_closed_form(const Params& p) {
  Poly d(1);
  for (std::size_t k = 1; k <= p.N; ++k) {
    Rat pre = factorial(static_cast<unsigned>(k - 1)) * p.mu[0] /
              (pochhammer(p.alpha + 2, static_cast<unsigned>(k - 1)) * p.mu[k - 1]);
    if (k % 2 == 0) pre = -pre;
    d *= pre * hyp1f1_factor(p, k);
  }
  return d;
}

MatPoly log_derivative_poly(const Params& p, const MatPoly& F, const Poly& detF) {
  const MatPoly adj = mat_adjugate(F);
  return MatPoly::scalar(p.N, Rat(-p.nu) * detF) - adj * j_mat(p.N) * F + adj * F.derivative() * Poly::x();
}

SeedData seed_from_matrix(const Params& p, MatPoly F) {
  SeedData s;
  s.m = p.m;
  s.detF = mat_det(F);
  if (s.detF.is_zero()) throw std::domain_error("seed matrix is singular");
  s.Upsilon = Poly::x() * s.detF;
  s.Phi = log_derivative_poly(p, F, s.detF);
  s.F = std::move(F);
  return s;
}

SeedData build_seed(const Params& p) {
  SeedData s = seed_from_matrix(p, seed_matrix(p));
  if (!(s.detF == det_F_closed_form(p))) throw std::logic_error("det F_m differs from its closed form");
  return s;
}

MatPoly seed_residual(const Params& p, const MatPoly& F) {
  const std::size_t n = p.N;
  const Poly x = Poly::x();
  const Mat id = Mat::identity(n);
  const Mat nj = p.nu * id + j_mat(n);
  const Mat nj1 = nj * (nj + id);
  const MatPoly lin = MatPoly::constant(m1_mat(p)) * x + MatPoly::constant(m2_mat(p));
  const Mat c = c_mat(p) - p.lambda() * id;
  const MatPoly f1 = F.derivative(), f2 = F.derivative(2);
  return f2 * (x * x) + f1 * lin * x - nj * f1 * (x * Rat(2)) + nj1 * F - nj * F * lin + F * c * x;
}

bool verify_seed(const Params& p, const MatPoly& F) { return seed_residual(p, F).is_zero(); }

bool verify_seed(const Params& p) { return verify_seed(p, seed_matrix(p)); }

RightDiffOp build_Am(const SeedData& s) {
  const std::size_t n = s.F.size();
  return RightDiffOp({RatMatFun(-s.Phi), RatMatFun(MatPoly::scalar(n, s.Upsilon))});
}

RightDiffOp build_Bm(const Params& p, const SeedData& s) {
  const std::size_t n = p.N;
  const Poly x = Poly::x();
  const Poly& u = s.Upsilon;
  const MatPoly lin = MatPoly::constant(m1_mat(p)) * x + MatPoly::constant(m2_mat(p));
  const MatPoly c0 = MatPoly::scalar(n, -(u.derivative() * x)) + lin * u + s.Phi * x;
  return RightDiffOp({RatMatFun(c0, u * u), RatMatFun(MatPoly::scalar(n, x), u)});
}

RightDiffOp build_T1(const Params& p, const RightDiffOp& a, const RightDiffOp& b) {
  return compose(b, a) + p.lambda();
}

IndicialResult indicial_exponents(const Mat& b1, const Mat& b2) {
  const std::size_t n = b1.rows();
  if (!b1.is_square() || b2.rows() != n || b2.cols() != n) throw std::invalid_argument("indicial_exponents: shape mismatch");
  MatPoly e(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rat d = i == j ? Rat(1) : Rat(0);
      e(i, j) = Poly(std::vector<Rat>{b2(i, j), b1(i, j) - d, d});
    }
  IndicialResult r;
  r.polynomial = mat_det(e);
  Poly rest = r.polynomial;
  if (rest.degree() <= 0) return r;
  const RootResult num = find_roots(rest, {.precision_bits = 128});
  for (const auto& z : num.roots) {
    if (std::fabs(z.imag()) > 1e-8 * std::max(1.0, std::abs(z))) continue;
    const Rat cand = rationalize(z.real());
    unsigned mult = 0;
    const Poly lin = Poly::x() - cand;
    while (rest.degree() > 0 && rest.eval(cand) == 0) {
      rest = poly_exact_div(rest, lin);
      ++mult;
    }
    if (mult > 0) r.exact.emplace_back(cand, mult);
  }
  if (rest.degree() > 0) r.numeric = find_roots(rest, {.precision_bits = 128}).roots;
  std::sort(r.exact.begin(), r.exact.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return r;
}

PositivityCertificate certify_detF(const Params& p, const SeedData& s, bool run_sturm) {
  PositivityCertificate c;
  c.coefficients_positive = true;
  for (std::size_t k = 1; k <= p.N; ++k)
    for (const auto& q : hyp1f1_factor(p, k).coeffs())
      if (q <= 0) c.coefficients_positive = false;
  if (run_sturm) c.sturm_nonnegative_roots = count_nonnegative_roots(s.detF);
  return c;
}

}  // namespace mvxop
