#include "mvxop/quadrature.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace mvxop {

namespace mp = boost::multiprecision;

namespace {

using R = mp::number<mp::mpfr_float_backend<40>, mp::et_off>;

R from_rat(const Rat& q) {
  R r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

struct Rule {
  std::vector<R> x, w;
};

/// Orthonormal Laguerre recurrence: a_k = 2k + nu + 1, b_k = sqrt(k (k + nu)).
std::shared_ptr<const Rule> compute_rule(const Rat& nu_q, unsigned n) {
  const double nu_d = nu_q.get_d();
  Eigen::VectorXd diag(n), sub(n > 1 ? n - 1 : 0);
  for (unsigned k = 0; k < n; ++k) diag(k) = 2.0 * k + nu_d + 1;
  for (unsigned k = 1; k < n; ++k) sub(k - 1) = std::sqrt(k * (k + nu_d));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("quadrature: tridiagonal eigensolver failed");

  const R nu = from_rat(nu_q);
  std::vector<R> a(n), b(n + 1);
  for (unsigned k = 0; k < n; ++k) a[k] = 2 * k + nu + 1;
  for (unsigned k = 1; k <= n; ++k) b[k] = mp::sqrt(k * (k + nu));

  auto rule = std::make_shared<Rule>();
  rule->x.resize(n);
  rule->w.resize(n);
  const R eps = mp::ldexp(R(1), -120);
  for (unsigned i = 0; i < n; ++i) {
    R x = es.eigenvalues()(i);
    R sum_sq;
    for (int it = 0; it < 40; ++it) {
      R p0 = 1, p1 = (x - a[0]) / b[1], d0 = 0, d1 = 1 / b[1];
      sum_sq = 1;
      for (unsigned k = 1; k < n; ++k) {
        sum_sq += p1 * p1;
        const R p2 = ((x - a[k]) * p1 - b[k] * p0) / b[k + 1];
        const R d2 = (p1 + (x - a[k]) * d1 - b[k] * d0) / b[k + 1];
        p0 = p1; p1 = p2; d0 = d1; d1 = d2;
      }
      const R dx = p1 / d1;
      x -= dx;
      if (mp::abs(dx) <= eps * mp::abs(x)) break;
    }
    // weight from the converged node
    R p0 = 1, p1 = (x - a[0]) / b[1];
    sum_sq = 1;
    for (unsigned k = 1; k < n; ++k) {
      sum_sq += p1 * p1;
      const R p2 = ((x - a[k]) * p1 - b[k] * p0) / b[k + 1];
      p0 = p1; p1 = p2;
    }
    rule->x[i] = x;
    rule->w[i] = 1 / sum_sq;
  }
  return rule;
}

std::shared_ptr<const Rule> get_rule(const Rat& nu, unsigned n) {
  static std::mutex mu;
  static std::map<std::pair<std::string, unsigned>, std::shared_ptr<const Rule>> cache;
  const auto key = std::make_pair(format_rat(nu), n);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto rule = compute_rule(nu, n);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, rule).first->second;
}

struct NumPoly {
  std::vector<R> c;
  explicit NumPoly(const Poly& p) {
    for (const auto& q : p.coeffs()) c.push_back(from_rat(q));
  }
  R eval(const R& x) const {
    R r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
  }
};

struct NumFun {
  std::size_t n;
  std::vector<NumPoly> num;
  NumPoly den;
  explicit NumFun(const RatMatFun& f) : n(f.size()), den(f.den()) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) num.emplace_back(f.num()(i, j));
  }
  std::vector<R> eval(const R& x) const {
    const R d = den.eval(x);
    std::vector<R> v(n * n);
    for (std::size_t k = 0; k < n * n; ++k) v[k] = num[k].eval(x) / d;
    return v;
  }
};

/// Returns the integral and, in `magnitude`, the integral of the entrywise absolute integrand bound.
std::vector<R> integrate_order(const Rule& rule, const NumFun& l, const NumFun& m, const NumFun& r, R& magnitude) {
  const std::size_t n = l.n;
  std::vector<R> acc(n * n, R(0)), mag(n * n, R(0));
  for (std::size_t q = 0; q < rule.x.size(); ++q) {
    const auto lv = l.eval(rule.x[q]), mv = m.eval(rule.x[q]), rv = r.eval(rule.x[q]);
    std::vector<R> lm(n * n, R(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) lm[i * n + j] += lv[i * n + k] * mv[k * n + j];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        R s = 0, sa = 0;
        for (std::size_t k = 0; k < n; ++k) {
          s += lm[i * n + k] * rv[j * n + k];
          sa += mp::abs(lm[i * n + k] * rv[j * n + k]);
        }
        acc[i * n + j] += rule.w[q] * s;
        mag[i * n + j] += rule.w[q] * sa;
      }
  }
  magnitude = 0;
  for (const R& v : mag)
    if (v > magnitude) magnitude = v;
  return acc;
}

Eigen::MatrixXd to_double(const std::vector<R>& v, std::size_t n) {
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<double>(v[i * n + j]);
  return m;
}

}  // namespace

QuadResult integrate(const Rat& nu, const RatMatFun& left, const RatMatFun& mid, const RatMatFun& right,
                     const QuadOptions& opt) {
  if (nu <= -1) throw std::invalid_argument("quadrature: nu must exceed -1");
  if (left.size() != mid.size() || mid.size() != right.size()) throw std::invalid_argument("quadrature: size mismatch");
  const NumFun l(left), m(mid), r(right);
  const std::size_t n = left.size();
  std::vector<R> prev;
  unsigned order = std::max(1u, opt.min_order);
  for (;; order *= 2) {
    R scale;
    const std::vector<R> cur = integrate_order(*get_rule(nu, order), l, m, r, scale);
    if (!prev.empty()) {
      R diff = 0;
      for (std::size_t k = 0; k < cur.size(); ++k) {
        if (R d = mp::abs(cur[k] - prev[k]); d > diff) diff = d;
        if (R a = mp::abs(cur[k]); a > scale) scale = a;
      }
      if (diff <= opt.rel_tol * scale || diff == 0) return {to_double(cur, n), static_cast<double>(diff), order};
      if (order * 2 > opt.max_order)
        throw std::runtime_error("quadrature did not converge by order " + std::to_string(order) +
                                 " (estimate " + std::to_string(static_cast<double>(diff / scale)) + ")");
    }
    prev = cur;
  }
}

void gauss_laguerre_rule(const Rat& nu, unsigned order, std::vector<double>& nodes, std::vector<double>& weights) {
  const auto rule = get_rule(nu, order);
  nodes.clear();
  weights.clear();
  for (std::size_t i = 0; i < rule->x.size(); ++i) {
    nodes.push_back(static_cast<double>(rule->x[i]));
    weights.push_back(static_cast<double>(rule->w[i]));
  }
}

double rel_dev(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double floor) {
  const double scale = std::max(b.cwiseAbs().maxCoeff(), floor);
  const double diff = (a - b).cwiseAbs().maxCoeff();
  return scale == 0 ? diff : diff / scale;
}

Eigen::MatrixXd to_eigen(const Mat& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j).get_d();
  return e;
}

}  // namespace mvxop
