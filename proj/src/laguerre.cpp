#include "mvxop/laguerre.hpp"

#include <stdexcept>
#include <string>

namespace mvxop {

namespace {

bool is_integer_in(const Rat& q, long lo, long hi) {
  if (q.get_den() != 1) return false;
  return q >= lo && q <= hi;
}

}  // namespace

Params& Params::complete() {
  if (mu.empty()) mu.assign(N, Rat(1));
  if (delta.empty()) delta.assign(N, Rat(1));
  validate();
  return *this;
}

void Params::validate() const {
  if (N < 1) throw std::invalid_argument("N must be a positive integer");
  if (mu.size() != N) throw std::invalid_argument("mu must have exactly N = " + std::to_string(N) + " entries");
  if (delta.size() != N) throw std::invalid_argument("delta must have exactly N = " + std::to_string(N) + " entries");
  for (const auto& q : mu)
    if (q == 0) throw std::invalid_argument("mu entries must be nonzero");
  for (const auto& q : delta)
    if (q <= 0) throw std::invalid_argument("delta entries must be positive");
  if (alpha <= 0) throw std::invalid_argument("alpha must be positive (got " + format_rat(alpha) + ")");
  const Rat bound = m > 0 ? Rat(static_cast<long>(m) - 1) : Rat(0);
  if (!allow_small_nu && nu <= bound)
    throw std::invalid_argument("standing assumption violated: nu must satisfy nu > max(0, m-1) = " + format_rat(bound) +
                                " (got nu = " + format_rat(nu) + "); pass --allow-small-nu to override");
  if (nu <= -1) throw std::invalid_argument("nu must exceed -1 for the weights to be integrable");
  for (std::size_t i = 1; i <= N; ++i) {
    if (m > 0 && is_integer_in(nu + Rat(static_cast<long>(i) - 1), 0, static_cast<long>(m) - 1))
      throw std::invalid_argument("seed undefined: nu + " + std::to_string(i - 1) + " is an integer in [0, m-1]");
    if (m > 0 && is_integer_in(alpha + Rat(static_cast<long>(i)), 0, static_cast<long>(m) - 1))
      throw std::invalid_argument("seed undefined: alpha + " + std::to_string(i) + " is an integer in [0, m-1]");
  }
}

Mat a_mu(const Params& p) {
  Mat a(p.N);
  for (std::size_t i = 1; i < p.N; ++i) a(i, i - 1) = -p.mu[i] / p.mu[i - 1];
  return a;
}

Mat j_mat(std::size_t n) {
  Mat j(n);
  for (std::size_t i = 0; i < n; ++i) j(i, i) = static_cast<long>(i + 1);
  return j;
}

namespace {

Mat a_plus_one_inverse(const Params& p) { return (a_mu(p) + Mat::identity(p.N)).inverse(); }

}  // namespace

Mat m1_mat(const Params& p) { return Rat(-1) * a_plus_one_inverse(p); }

Mat m2_mat(const Params& p) {
  const Mat id = Mat::identity(p.N), j = j_mat(p.N);
  return (p.nu + 1) * id + j + (p.alpha * id + j) * a_mu(p);
}

Mat c_mat(const Params& p) { return (p.alpha - p.nu) * a_plus_one_inverse(p) - j_mat(p.N); }

Mat gamma_n(const Params& p, unsigned n) {
  return (p.alpha - p.nu - static_cast<long>(n)) * a_plus_one_inverse(p) - j_mat(p.N);
}

Poly scalar_laguerre(unsigned n, const Rat& a) {
  std::vector<Rat> c(n + 1);
  for (unsigned k = 0; k <= n; ++k) {
    Rat v = pochhammer(a + static_cast<long>(k) + 1, n - k) / (factorial(n - k) * factorial(k));
    c[k] = k % 2 == 0 ? v : Rat(-v);
  }
  return Poly(std::move(c));
}

MatPoly laguerre_L(const Params& p) {
  MatPoly l(p.N);
  for (std::size_t i = 0; i < p.N; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      l(i, j) = (p.mu[i] / p.mu[j]) * scalar_laguerre(static_cast<unsigned>(i - j), p.alpha + static_cast<long>(j + 1));
  return l;
}

MatPoly laguerre_L_inverse(const Params& p) {
  const MatPoly id = MatPoly::identity(p.N);
  const MatPoly nil = id - laguerre_L(p);
  MatPoly inv = id, power = id;
  for (std::size_t k = 1; k < p.N; ++k) {
    power = power * nil;
    inv += power;
  }
  return inv;
}

QuasiWeight build_weight(const Params& p) {
  const MatPoly l = laguerre_L(p);
  MatPoly t(p.N);
  for (std::size_t i = 0; i < p.N; ++i) t(i, i) = Poly::monomial(static_cast<unsigned>(i + 1), p.delta[i]);
  return {l * t * l.transpose(), 0, p.nu};
}

Mat moment(const Params& p, const MatPoly& v, unsigned k) {
  Mat s(p.N);
  const int d = v.degree();
  std::vector<Rat> poch(static_cast<std::size_t>(std::max(d, 0)) + 1);
  for (int q = 0; q <= d; ++q) poch[q] = pochhammer(p.nu + 1, static_cast<unsigned>(q) + k);
  for (std::size_t i = 0; i < p.N; ++i)
    for (std::size_t j = 0; j < p.N; ++j) {
      const auto& c = v(i, j).coeffs();
      Rat acc = 0;
      for (std::size_t q = 0; q < c.size(); ++q) acc += c[q] * poch[q];
      s(i, j) = acc;
    }
  return s;
}

std::vector<Mat> moments(const Params& p, unsigned count) {
  const MatPoly v = build_weight(p).v();
  std::vector<Mat> out;
  out.reserve(count);
  for (unsigned k = 0; k < count; ++k) out.push_back(moment(p, v, k));
  return out;
}

Mat inner_w(const Params& p, const MatPoly& P, const MatPoly& Q) {
  return moment(p, P * build_weight(p).v() * Q.transpose(), 0);
}

RightDiffOp build_T0(const Params& p) {
  const Poly x = Poly::x();
  const MatPoly f2 = MatPoly::scalar(p.N, x);
  const MatPoly f1 = MatPoly::constant(m1_mat(p)) * x + MatPoly::constant(m2_mat(p));
  const MatPoly f0 = MatPoly::constant(c_mat(p));
  return RightDiffOp({RatMatFun(f0), RatMatFun(f1), RatMatFun(f2)});
}

namespace {

MVOPData solve_mvop(const Params& p, const std::vector<Mat>& s, unsigned n) {
  const std::size_t N = p.N;
  std::vector<Mat> x(n);
  if (n > 0) {
    // X G = -R with G_{jk} = S_{j+k}; solved through the transpose.
    Mat g(n * N), r(N, n * N);
    for (unsigned j = 0; j < n; ++j)
      for (unsigned k = 0; k < n; ++k)
        for (std::size_t a = 0; a < N; ++a)
          for (std::size_t b = 0; b < N; ++b) g(j * N + a, k * N + b) = s[j + k](a, b);
    for (unsigned k = 0; k < n; ++k)
      for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b) r(a, k * N + b) = -s[n + k](a, b);
    Mat xt;
    try {
      xt = solve(g.transpose(), r.transpose());
    } catch (const std::domain_error&) {
      throw std::domain_error("singular Gram block at degree " + std::to_string(n));
    }
    for (unsigned j = 0; j < n; ++j) {
      x[j] = Mat(N);
      for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b) x[j](a, b) = xt(j * N + b, a);
    }
  }
  std::vector<Mat> coeffs = x;
  coeffs.push_back(Mat::identity(N));
  MVOPData d;
  d.n = n;
  d.P = MatPoly::from_coeffs(coeffs);
  d.H = s[2 * n];
  for (unsigned j = 0; j < n; ++j) d.H += x[j] * s[j + n];
  d.Gamma = gamma_n(p, n);
  return d;
}

}  // namespace

std::vector<MVOPData> mvop_family(const Params& p, unsigned nmax, bool check_eigen) {
  const std::vector<Mat> s = moments(p, 2 * nmax + 1);
  const RightDiffOp t0 = build_T0(p);
  std::vector<MVOPData> out;
  out.reserve(nmax + 1);
  for (unsigned n = 0; n <= nmax; ++n) {
    out.push_back(solve_mvop(p, s, n));
    if (check_eigen) {
      const MatPoly lhs = apply_right(t0, out.back().P).to_matpoly();
      if (!(lhs == out.back().Gamma * out.back().P))
        throw std::logic_error("P_n . T0 != Gamma_n P_n at n = " + std::to_string(n));
    }
  }
  return out;
}

MVOPData monic_mvop(const Params& p, unsigned n, bool check_eigen) {
  return mvop_family(p, n, check_eigen).back();
}

TTRCoeffs ttr(const std::vector<MVOPData>& family, unsigned n) {
  if (n + 1 >= family.size()) throw std::out_of_range("ttr: family too short");
  const MatPoly xp = family[n].P * Poly::x();
  const MatPoly r = xp - family[n + 1].P;
  TTRCoeffs t;
  t.B = r.coeff(n);
  const std::size_t N = family[n].P.size();
  t.C = Mat(N);
  if (n > 0) t.C = (r - t.B * family[n].P).coeff(n - 1);
  return t;
}

TTRCoeffs ttr(const Params& p, unsigned n) { return ttr(mvop_family(p, n + 1, false), n); }

}  // namespace mvxop
