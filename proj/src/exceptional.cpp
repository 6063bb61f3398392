#include "mvxop/exceptional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mvxop {

namespace {

Mat scalar_mat(std::size_t n, const Rat& s) { return Mat::identity(n) * s; }

Check exact_check(const RatMatFun& got, const RatMatFun& expect, const std::string& what) {
  Check c;
  const RatMatFun diff = got - expect;
  c.ok = diff.is_zero();
  c.residual = c.ok ? 0.0 : max_abs_coeff(diff.num()) / std::max(1e-300, max_abs_coeff(diff.den()));
  c.detail = what + (c.ok ? ": exact" : ": mismatch");
  return c;
}

Check combine(const std::vector<Check>& parts) {
  Check c;
  c.ok = true;
  for (const auto& p : parts) {
    c.ok = c.ok && p.ok;
    c.residual = std::max(c.residual, p.residual);
    if (!c.detail.empty()) c.detail += "; ";
    c.detail += p.detail;
  }
  return c;
}

Check quasi_check(const QuasiWeight& lhs, const QuasiWeight& rhs, const std::string& what) {
  Check c;
  c.residual = quasi_residual(lhs, rhs);
  c.ok = lhs == rhs;
  c.detail = what + (c.ok ? ": exact" : ": mismatch");
  return c;
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

MatPoly coeff_poly(const RightDiffOp& t, std::size_t j) {
  if (static_cast<int>(j) > t.order()) return MatPoly(t.size());
  const RatMatFun& c = t.coeff(j);
  if (!c.is_polynomial()) throw std::invalid_argument("operator coefficient is not polynomial");
  return c.to_matpoly();
}

}  // namespace

RatMatFun XWeight::density() const { return RatMatFun(base.v_at_shift(0), denom_scalar); }

Mat XWeight::eval(const Rat& x0) const {
  const Rat d = denom_scalar.eval(x0);
  return base.v_at_shift(0).eval(x0) * Rat(1 / d);
}

namespace {

XWeight xweight_unchecked(const Params& p, const SeedData& s) {
  XWeight w;
  w.base = build_weight(p);
  if (w.base.shift() != 0) w.base = QuasiWeight(w.base.v_at_shift(0), 0, p.nu);
  w.denom_scalar = Poly::x() * s.detF * s.detF;
  return w;
}

}  // namespace

XWeight build_xweight(const Params& p, const SeedData& s) {
  PositivityCertificate cert = certify_detF(p, s, false);
  if (!cert.holds()) cert = certify_detF(p, s, true);
  if (!cert.holds()) throw std::invalid_argument("det F_m has a root on [0, inf); the exceptional weight is singular");
  return xweight_unchecked(p, s);
}

XPolyData xpoly(const Params& p, const RightDiffOp& a, const MVOPData& d) {
  XPolyData x;
  x.n = d.n;
  x.Phat = apply_right(a, d.P).to_matpoly();
  x.Hhat = d.H * (scalar_mat(p.N, p.lambda()) - d.Gamma).transpose();
  return x;
}

Model Model::build(const Params& params, unsigned nmax, bool with_T1) {
  Model md;
  md.p = params;
  md.p.complete();
  md.seed = build_seed(md.p);
  md.T0 = build_T0(md.p);
  md.A = build_Am(md.seed);
  md.B = build_Bm(md.p, md.seed);
  if (with_T1) md.T1 = build_T1(md.p, md.A, md.B);
  md.family = mvop_family(md.p, nmax, false);
  for (const auto& d : md.family) md.xfamily.push_back(xpoly(md.p, md.A, d));
  try {
    md.xweight = build_xweight(md.p, md.seed);
    md.weight_ok = true;
  } catch (const std::invalid_argument&) {
    if (!md.p.allow_small_nu) throw;
    md.xweight = xweight_unchecked(md.p, md.seed);
  }
  return md;
}

namespace {

void require_T1(const Model& md) {
  if (!md.has_T1()) throw std::logic_error("model was built without T1");
}

void require_weight(const Model& md) {
  if (!md.weight_ok) throw std::logic_error("det F_m vanishes on [0, inf); the exceptional weight is not integrable");
}

}  // namespace

Check verify_factorization(const Model& md) {
  require_T1(md);
  Check a;
  a.ok = compose(md.A, md.B) + md.p.lambda() == md.T0;
  a.detail = std::string("A B + lambda = T0: ") + (a.ok ? "exact" : "mismatch");
  Check b;
  b.ok = compose(md.A, md.T1) == compose(md.T0, md.A);
  b.detail = std::string("A T1 = T0 A: ") + (b.ok ? "exact" : "mismatch");
  a.residual = a.ok ? 0 : 1;
  b.residual = b.ok ? 0 : 1;
  return combine({a, b});
}

Check verify_lowering(const Model& md, unsigned n, std::optional<Rat> lambda) {
  const Rat lam = lambda.value_or(md.p.lambda());
  const auto& d = md.family.at(n);
  const RatMatFun got = apply_right(md.B, md.xfamily.at(n).Phat);
  Check c = exact_check(got, RatMatFun((d.Gamma - scalar_mat(md.p.N, lam)) * d.P), "P_hat_n . B = (Gamma_n - lambda) P_n");
  if (!got.is_polynomial()) {
    c.ok = false;
    c.detail += " (quotient by Upsilon not exact)";
  }
  return c;
}

Check verify_eigen_T1(const Model& md, unsigned n, std::optional<Mat> eigen) {
  require_T1(md);
  const Mat g = eigen.value_or(md.family.at(n).Gamma);
  const MatPoly& ph = md.xfamily.at(n).Phat;
  return exact_check(apply_right(md.T1, ph), RatMatFun(g * ph), "P_hat_n . T1 = Gamma_n P_hat_n");
}

Check verify_eigen_two_route(const Model& md, unsigned n) {
  const auto& d = md.family.at(n);
  const MatPoly& ph = md.xfamily.at(n).Phat;
  const Mat shift = d.Gamma - scalar_mat(md.p.N, md.p.lambda());
  const RatMatFun route = apply_right(md.A, shift * d.P) + md.p.lambda() * RatMatFun(ph);
  return exact_check(route, RatMatFun(d.Gamma * ph), "(Gamma_n - lambda) P_n . A + lambda P_hat_n = Gamma_n P_hat_n");
}

Check verify_BA(const Model& md, unsigned n) {
  const auto& d = md.family.at(n);
  const MatPoly& ph = md.xfamily.at(n).Phat;
  const RatMatFun got = apply_right(md.A, apply_right(md.B, ph));
  return exact_check(got, RatMatFun((d.Gamma - scalar_mat(md.p.N, md.p.lambda())) * ph),
                     "P_hat_n . B . A = (Gamma_n - lambda) P_hat_n");
}

Check verify_xdegree(const Model& md, unsigned n) {
  const MatPoly& ph = md.xfamily.at(n).Phat;
  const int expect = static_cast<int>(md.p.m * md.p.N + n);
  Check c;
  const Mat lead = ph.lead();
  c.ok = ph.degree() == expect && lead.is_lower_triangular() && lead.det() != 0;
  std::ostringstream os;
  os << "degree " << ph.degree() << " (expected " << expect << "), leading coefficient "
     << (lead.is_lower_triangular() ? "lower triangular" : "not lower triangular") << ", det " << format_rat(lead.det());
  c.detail = os.str();
  c.residual = c.ok ? 0 : 1;
  return c;
}

Check verify_xnorm(const Model& md, unsigned n) {
  const auto& d = md.family.at(n);
  const Mat& hh = md.xfamily.at(n).Hhat;
  const Mat other = (scalar_mat(md.p.N, md.p.lambda()) - d.Gamma) * d.H;
  Check c;
  const bool same = hh == other, sym = hh.is_symmetric(), pd = hh.is_positive_definite();
  c.ok = same && sym && pd;
  c.residual = same ? 0 : to_double((hh - other).max_abs());
  c.detail = std::string("H_hat_n: ") + (same ? "both products agree" : "products differ") + ", " +
             (sym ? "symmetric" : "not symmetric") + ", " + (pd ? "positive definite" : "not positive definite");
  return c;
}

Check verify_symmetry(const QuasiWeight& w, const RightDiffOp& t) {
  if (t.order() != 2) throw std::invalid_argument("verify_symmetry: second order operator expected");
  const MatPoly f2 = coeff_poly(t, 2), f1 = coeff_poly(t, 1), f0 = coeff_poly(t, 0);
  const Poly half(Rat(1, 2));
  const QuasiWeight f2w = f2 * w, f1w = f1 * w;
  const QuasiWeight wf1 = w * f1.transpose(), wf0 = w * f0.transpose(), f0w = f0 * w;
  return combine({
      quasi_check(f2w, w * f2.transpose(), "F2 W = W F2^T"),
      quasi_check(f2w.derivative(), half * (wf1 + f1w), "(F2 W)' = (W F1^T + F1 W)/2"),
      quasi_check(f2w.derivative().derivative(), f1w.derivative() - f0w + wf0, "(F2 W)'' = (F1 W)' - F0 W + W F0^T"),
      quasi_check((wf1 - f1w).derivative(), Poly(2) * (wf0 - f0w), "(W F1^T - F1 W)' = 2 (W F0^T - F0 W)"),
  });
}

Check verify_symmetry(const Model& md) { return verify_symmetry(md.xweight.base, md.T0); }

Check verify_pearson(const Model& md) {
  const QuasiWeight& w = md.xweight.base;
  const MatPoly f2 = coeff_poly(md.T0, 2), f1 = coeff_poly(md.T0, 1);
  const MatPoly& phi = md.seed.Phi;
  const Poly& u = md.seed.Upsilon;
  const QuasiWeight wf2 = w * f2.transpose();
  const QuasiWeight lhs = u * wf2.derivative();
  const QuasiWeight rhs = u * (w * f1.transpose()) + wf2 * phi.transpose() - phi * wf2;
  return quasi_check(lhs, rhs, "Upsilon (W F2^T)' = Upsilon W F1^T + W F2^T Phi^T - Phi W F2^T");
}

Check verify_pearson_symmetrized(const Model& md) {
  const QuasiWeight& w = md.xweight.base;
  const MatPoly f2 = coeff_poly(md.T0, 2), f1 = coeff_poly(md.T0, 1);
  const MatPoly g = md.seed.Phi * f2 + f1 * Poly(md.seed.Upsilon * Poly(Rat(1, 2)));
  return quasi_check(g * w, w * g.transpose(), "G W = W G^T, G = Phi F2 + Upsilon F1 / 2");
}

QuadResult inner_xweight(const Model& md, const MatPoly& P, const MatPoly& Q, const QuadOptions& opt) {
  require_weight(md);
  return integrate(md.p.nu, RatMatFun(P), md.xweight.density(), RatMatFun(Q), opt);
}

Check verify_orthogonality(const Model& md, unsigned nmax, double tol, const QuadOptions& opt) {
  double hmax = 0;
  for (unsigned n = 0; n <= nmax; ++n) hmax = std::max(hmax, max_abs(to_eigen(md.xfamily.at(n).Hhat)));
  double off = 0, diag = 0;
  for (unsigned n = 0; n <= nmax; ++n)
    for (unsigned k = n; k <= nmax; ++k) {
      const QuadResult r = inner_xweight(md, md.xfamily[n].Phat, md.xfamily[k].Phat, opt);
      if (n == k) diag = std::max(diag, rel_dev(r.value, to_eigen(md.xfamily[n].Hhat)));
      else off = std::max(off, max_abs(r.value) / hmax);
    }
  Check c;
  c.ok = off < tol && diag < tol;
  c.residual = std::max(off, diag);
  std::ostringstream os;
  os << "off-diagonal blocks " << off << " of max |H_hat|, diagonal blocks within " << diag << " of H_hat";
  c.detail = os.str();
  return c;
}

Check verify_adjoint(const Model& md, const MatPoly& p, const MatPoly& q, double tol, const QuadOptions& opt,
                     bool drop_x) {
  require_weight(md);
  RatMatFun mid = md.xweight.density();
  if (drop_x) mid = RatMatFun(md.xweight.base.v_at_shift(0), md.seed.detF * md.seed.detF);
  const RatMatFun pa = apply_right(md.A, p), qb = apply_right(md.B, q);
  const QuadResult lhs = integrate(md.p.nu, pa, mid, RatMatFun(q), opt);
  const QuadResult rhs = integrate(md.p.nu, RatMatFun(p), RatMatFun(md.xweight.base.v_at_shift(0)), qb, opt);
  const double scale = std::max({max_abs(lhs.value), max_abs(rhs.value), 1e-300});
  Check c;
  c.residual = max_abs(lhs.value + rhs.value) / scale;
  c.ok = c.residual < tol;
  std::ostringstream os;
  os << "<p.A, q>_W_hat + <p, q.B>_W relative " << c.residual << (drop_x ? " (boundary factor x removed)" : "");
  c.detail = os.str();
  return c;
}

Check verify_adjoint_mvop(const Model& md, unsigned n, unsigned k, double tol, const QuadOptions& opt) {
  const auto& dn = md.family.at(n);
  const MatPoly& qk = md.xfamily.at(k).Phat;
  const RatMatFun qb = apply_right(md.B, qk);
  if (!qb.is_polynomial()) return {false, 1, "P_hat_k . B is not polynomial"};
  const Mat exact = inner_w(md.p, dn.P, qb.to_matpoly()) * Rat(-1);
  const Mat expect = n == k ? md.xfamily[n].Hhat : Mat(md.p.N);
  const QuadResult lhs = inner_xweight(md, md.xfamily.at(n).Phat, qk, opt);
  Check c;
  const double scale = std::max(max_abs(to_eigen(md.xfamily[n].Hhat)), max_abs(to_eigen(md.xfamily[k].Hhat)));
  c.residual = max_abs(lhs.value - to_eigen(exact)) / scale;
  c.ok = exact == expect && c.residual < tol;
  std::ostringstream os;
  os << "-<P_n, P_hat_k . B>_W " << (exact == expect ? "equals" : "differs from") << " delta_nk H_hat_n exactly; quadrature relative "
     << c.residual;
  c.detail = os.str();
  return c;
}

// ---------------------------------------------------------------------------

RightDiffOp diagonal_T0(const Params& p) {
  const RightDiffOp l = RightDiffOp::multiply(laguerre_L(p)), li = RightDiffOp::multiply(laguerre_L_inverse(p));
  return compose(li, compose(build_T0(p), l));
}

namespace {

MatPoly diagonal_phi(const Params& p, const SeedData& s) {
  MatPoly phi(p.N);
  const Poly x = Poly::x();
  for (std::size_t i = 0; i < p.N; ++i) {
    const Poly l = scalar_laguerre(p.m, -p.nu - static_cast<long>(i + 1));
    phi(i, i) = (Poly(-p.nu - static_cast<long>(i + 1)) * l + x * l.derivative()) * poly_exact_div(s.detF, l);
  }
  return phi;
}

/// Upsilon (phi^d L^-1)^-1 (phi^d L^-1)' = L Phi^d L^-1 - Upsilon L' L^-1
MatPoly conjugated_phi(const Params& p, const SeedData& s) {
  const MatPoly l = laguerre_L(p), li = laguerre_L_inverse(p);
  return l * diagonal_phi(p, s) * li - (l.derivative() * li) * s.Upsilon;
}

}  // namespace

RightDiffOp diagonal_A(const Params& p, const SeedData& s) {
  return RightDiffOp({RatMatFun(-diagonal_phi(p, s)), RatMatFun(MatPoly::scalar(p.N, s.Upsilon))});
}

RightDiffOp conjugated_A(const Params& p, const SeedData& s) {
  const RightDiffOp l = RightDiffOp::multiply(laguerre_L(p)), li = RightDiffOp::multiply(laguerre_L_inverse(p));
  return compose(l, compose(diagonal_A(p, s), li));
}

DiagonalRoute diagonal_route(const Model& md, unsigned n) {
  const Params& p = md.p;
  DiagonalRoute r;
  r.Pd = MatPoly(p.N);
  Mat eig(p.N);
  for (std::size_t i = 0; i < p.N; ++i) {
    const Rat a = p.nu + static_cast<long>(i + 1);
    r.Pd(i, i) = scalar_laguerre(n, a).monic();
    eig(i, i) = -Rat(n) + p.alpha - a;
  }
  r.eigen = eig;
  r.Qhat = apply_right(diagonal_A(p, md.seed), r.Pd).to_matpoly() * laguerre_L_inverse(p);

  // expand Qhat . B_m on the monic family, row by row
  const RatMatFun qb = apply_right(md.B, r.Qhat);
  r.span_degree.assign(p.N, -1);
  if (!qb.is_polynomial()) {
    r.span_degree.assign(p.N, std::numeric_limits<int>::max());
    return r;
  }
  MatPoly rest = qb.to_matpoly();
  const int deg = rest.degree();
  if (deg < 0) return r;
  const auto fam = mvop_family(p, static_cast<unsigned>(deg), false);
  for (int k = deg; k >= 0; --k) {
    const Mat c = rest.coeff(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < p.N; ++i) {
      bool nonzero = false;
      for (std::size_t j = 0; j < p.N; ++j) nonzero = nonzero || c(i, j) != 0;
      if (nonzero) r.span_degree[i] = std::max(r.span_degree[i], k);
    }
    rest -= c * fam[static_cast<std::size_t>(k)].P;
  }
  return r;
}

Check verify_diagonal_exact(const Model& md, unsigned n) {
  const Params& p = md.p;
  const RightDiffOp td = diagonal_T0(p);
  std::vector<Check> parts;
  Check diag;
  diag.ok = true;
  for (int j = 0; j <= td.order(); ++j)
    diag.ok = diag.ok && td.coeff(static_cast<std::size_t>(j)).num().is_lower_triangular() &&
              td.coeff(static_cast<std::size_t>(j)).num().transpose().is_lower_triangular();
  diag.detail = std::string("L^-1 T0 L ") + (diag.ok ? "is diagonal" : "is not diagonal");
  diag.residual = diag.ok ? 0 : 1;
  parts.push_back(diag);

  const RightDiffOp al = conjugated_A(p, md.seed);
  SeedData sl = md.seed;
  sl.Phi = conjugated_phi(p, md.seed);
  const RightDiffOp al_direct = build_Am(sl), bl = build_Bm(p, sl);
  Check same;
  same.ok = al == al_direct;
  same.detail = std::string("L A^d L^-1 ") + (same.ok ? "equals" : "differs from") + " the intertwiner of phi^d L^-1";
  same.residual = same.ok ? 0 : 1;
  parts.push_back(same);
  Check fac;
  fac.ok = compose(al, bl) + p.lambda() == md.T0;
  fac.detail = std::string("conjugated factorization ") + (fac.ok ? "exact" : "mismatch");
  fac.residual = fac.ok ? 0 : 1;
  parts.push_back(fac);

  const DiagonalRoute r = diagonal_route(md, n);
  const MatPoly qn = r.Pd * laguerre_L_inverse(p);
  parts.push_back(exact_check(apply_right(md.T0, qn), RatMatFun(r.eigen * qn), "Q_n . T0 = Lambda_n Q_n"));
  parts.push_back(exact_check(apply_right(al, qn), RatMatFun(r.Qhat), "Q_n . (L A^d L^-1) = (P^d_n . A^d) L^-1"));
  const RightDiffOp t1l = build_T1(p, al, bl);
  parts.push_back(exact_check(apply_right(t1l, r.Qhat), RatMatFun(r.eigen * r.Qhat), "Q_hat_n . T1_L = Lambda_n Q_hat_n"));
  return combine(parts);
}

Check verify_diagonal_orthogonality(const Model& md, unsigned nmax, double tol, const QuadOptions& opt) {
  const Params& p = md.p;
  std::vector<MatPoly> q;
  std::vector<Mat> exact;
  const Mat lam = scalar_mat(p.N, p.lambda());
  for (unsigned n = 0; n <= nmax; ++n) {
    const DiagonalRoute r = diagonal_route(md, n);
    q.push_back(r.Qhat);
    const MatPoly qn = r.Pd * laguerre_L_inverse(p);
    exact.push_back(inner_w(p, qn, qn) * (lam - r.eigen).transpose());
  }
  double hmax = 0;
  for (const auto& e : exact) hmax = std::max(hmax, max_abs(to_eigen(e)));
  double off = 0, diag = 0;
  for (unsigned n = 0; n <= nmax; ++n)
    for (unsigned k = n; k <= nmax; ++k) {
      const QuadResult r = inner_xweight(md, q[n], q[k], opt);
      if (n == k) diag = std::max(diag, rel_dev(r.value, to_eigen(exact[n])));
      else off = std::max(off, max_abs(r.value) / hmax);
    }
  Check c;
  c.ok = off < tol && diag < tol;
  c.residual = std::max(off, diag);
  std::ostringstream os;
  os << "Q_hat Gram: off-diagonal blocks " << off << " of the largest norm, diagonal blocks within " << diag;
  c.detail = os.str();
  return c;
}

}  // namespace mvxop
