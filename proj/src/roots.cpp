#include "mvxop/roots.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mvxop {

namespace mp = boost::multiprecision;

namespace {

template <unsigned D>
using Real = mp::number<mp::mpfr_float_backend<D>, mp::et_off>;

template <class R>
struct Cx {
  R re, im;
};

template <class R>
Cx<R> operator+(const Cx<R>& a, const Cx<R>& b) { return {a.re + b.re, a.im + b.im}; }
template <class R>
Cx<R> operator-(const Cx<R>& a, const Cx<R>& b) { return {a.re - b.re, a.im - b.im}; }
template <class R>
Cx<R> operator*(const Cx<R>& a, const Cx<R>& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
template <class R>
Cx<R> operator/(const Cx<R>& a, const Cx<R>& b) {
  const R d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
template <class R>
R cabs(const Cx<R>& a) { return mp::hypot(a.re, a.im); }

template <class R>
R from_rat(const Rat& q) {
  R r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

/// Starting points on circles from the upper convex hull of (k, log|a_k|).
std::vector<std::pair<double, double>> newton_polygon_start(const std::vector<double>& loga, const std::vector<bool>& nz) {
  const int n = static_cast<int>(loga.size()) - 1;
  std::vector<int> hull;
  for (int k = 0; k <= n; ++k) {
    if (!nz[k]) continue;
    while (hull.size() >= 2) {
      const int i = hull[hull.size() - 2], j = hull.back();
      // drop j when it lies on or below the segment i -> k
      const double cross = (j - i) * (loga[k] - loga[i]) - (k - i) * (loga[j] - loga[i]);
      if (cross >= 0) hull.pop_back();
      else break;
    }
    hull.push_back(k);
  }
  std::vector<std::pair<double, double>> start;  // (log radius, angle)
  const double sigma = 0.7;
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const int k0 = hull[s], k1 = hull[s + 1], len = k1 - k0;
    const double logr = (loga[k0] - loga[k1]) / len;
    for (int l = 0; l < len; ++l)
      start.emplace_back(logr, 2 * std::numbers::pi * l / len + 2 * std::numbers::pi * k0 / n + sigma);
  }
  return start;
}

template <unsigned D>
RootResult aberth(const std::vector<Rat>& coeffs, unsigned bits, unsigned max_iter) {
  using R = Real<D>;
  const int n = static_cast<int>(coeffs.size()) - 1;
  std::vector<R> a(n + 1), absa(n + 1);
  std::vector<double> loga(n + 1, 0);
  std::vector<bool> nz(n + 1);
  for (int k = 0; k <= n; ++k) {
    a[k] = from_rat<R>(coeffs[k]);
    absa[k] = mp::abs(a[k]);
    nz[k] = coeffs[k] != 0;
    if (nz[k]) loga[k] = log_abs(coeffs[k]);
  }

  std::vector<Cx<R>> z;
  for (const auto& [logr, theta] : newton_polygon_start(loga, nz)) {
    const R r = mp::exp(R(logr));
    z.push_back({r * mp::cos(R(theta)), r * mp::sin(R(theta))});
  }

  const R step_tol = mp::ldexp(R(1), -static_cast<int>(bits * 8 / 10));
  const R noise = mp::ldexp(R(1), -static_cast<int>(bits) + 12);
  auto eval = [&](const Cx<R>& x, Cx<R>& p, Cx<R>& dp, R& scale) {
    p = {a[n], R(0)};
    dp = {R(0), R(0)};
    scale = absa[n];
    const R ax = cabs(x);
    for (int k = n - 1; k >= 0; --k) {
      dp = dp * x + p;
      p = p * x + Cx<R>{a[k], R(0)};
      scale = scale * ax + absa[k];
    }
  };

  std::vector<bool> done(n, false);
  RootResult res;
  res.precision_bits = bits;
  unsigned it = 0;
  for (; it < max_iter; ++it) {
    bool all = true;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      Cx<R> p, dp;
      R scale;
      eval(z[i], p, dp, scale);
      if (cabs(p) <= noise * scale) {
        done[i] = true;
        continue;
      }
      const Cx<R> ratio = p / dp;
      Cx<R> s{R(0), R(0)};
      for (int j = 0; j < n; ++j)
        if (j != i) s = s + Cx<R>{R(1), R(0)} / (z[i] - z[j]);
      const Cx<R> w = ratio / (Cx<R>{R(1), R(0)} - ratio * s);
      z[i] = z[i] - w;
      if (cabs(w) <= step_tol * cabs(z[i])) done[i] = true;
      else all = false;
    }
    if (all) break;
  }
  res.iterations = it;
  res.threshold = std::ldexp(1.0, -static_cast<int>(bits / 2));
  res.converged = true;
  for (int i = 0; i < n; ++i) {
    Cx<R> p, dp;
    R scale;
    eval(z[i], p, dp, scale);
    const double r = scale == 0 ? 0.0 : static_cast<double>(cabs(p) / scale);
    res.residuals.push_back(r);
    res.roots.emplace_back(static_cast<double>(z[i].re), static_cast<double>(z[i].im));
    if (!(r <= res.threshold)) res.converged = false;
  }
  return res;
}

}  // namespace

double log_abs(const Rat& q) {
  if (q == 0) throw std::domain_error("log_abs of zero");
  long en = 0, ed = 0;
  const double dn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
  const double dd = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  return std::log(std::fabs(dn)) - std::log(dd) + static_cast<double>(en - ed) * std::numbers::ln2;
}

RootResult find_roots(const Poly& q, const RootOptions& opt) {
  if (q.is_zero()) throw std::invalid_argument("find_roots: zero polynomial");
  std::vector<Rat> c = q.coeffs();
  std::size_t zeros = 0;
  while (zeros < c.size() && c[zeros] == 0) ++zeros;
  c.erase(c.begin(), c.begin() + static_cast<long>(zeros));

  const unsigned bits = opt.precision_bits <= 128 ? 128 : opt.precision_bits <= 256 ? 256 : opt.precision_bits <= 512 ? 512 : 1024;
  RootResult res;
  if (c.size() > 1) {
    switch (bits) {
      case 128: res = aberth<39>(c, bits, opt.max_iterations); break;
      case 256: res = aberth<78>(c, bits, opt.max_iterations); break;
      case 512: res = aberth<155>(c, bits, opt.max_iterations); break;
      default: res = aberth<309>(c, bits, opt.max_iterations); break;
    }
  } else {
    res.precision_bits = bits;
    res.threshold = std::ldexp(1.0, -static_cast<int>(bits / 2));
    res.converged = true;
  }
  for (std::size_t k = 0; k < zeros; ++k) {
    res.roots.emplace_back(0.0, 0.0);
    res.residuals.push_back(0.0);
  }
  if (!res.converged) throw std::runtime_error("find_roots: Aberth iteration did not converge");
  return res;
}

Rat rationalize(double v, long max_den) {
  // continued fraction convergents h/k
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double x = v;
  for (int i = 0; i < 64; ++i) {
    const double fl = std::floor(x);
    if (std::fabs(fl) > 1e15) break;
    const long a = static_cast<long>(fl);
    const long h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    const double frac = x - fl;
    if (frac < 1e-12) break;
    x = 1 / frac;
  }
  Rat r(h1, k1 == 0 ? 1 : k1);
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------------------

std::vector<Poly> sturm_sequence(const Poly& p) {
  std::vector<Poly> seq;
  if (p.is_zero()) return seq;
  auto positive_scale = [](const Poly& q) { return q * Rat(1 / abs(q.lead())); };
  seq.push_back(positive_scale(p));
  if (p.degree() == 0) return seq;
  seq.push_back(positive_scale(p.derivative()));
  while (seq.back().degree() > 0) {
    Poly r = poly_divrem(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(positive_scale(-r));
  }
  return seq;
}

int sign_changes_at(const std::vector<Poly>& seq, const Rat& at) {
  int changes = 0, last = 0;
  for (const auto& q : seq) {
    const int s = sgn(q.eval(at));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int sign_changes_at_infinity(const std::vector<Poly>& seq) {
  int changes = 0, last = 0;
  for (const auto& q : seq) {
    const int s = sgn(q.lead());
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int sturm_count(const std::vector<Poly>& seq, const Rat& a, const Rat& b) {
  return sign_changes_at(seq, a) - sign_changes_at(seq, b);
}

int count_real_roots(const Poly& p) {
  if (p.is_zero()) throw std::invalid_argument("count_real_roots: zero polynomial");
  const auto seq = sturm_sequence(p);
  int changes = 0, last = 0;
  for (const auto& q : seq) {
    const int s = sgn(q.lead()) * (q.degree() % 2 ? -1 : 1);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes - sign_changes_at_infinity(seq);
}

int count_nonnegative_roots(const Poly& p) {
  if (p.is_zero()) throw std::invalid_argument("count_nonnegative_roots: zero polynomial");
  const auto seq = sturm_sequence(p);
  const int at_zero = p.eval(0) == 0 ? 1 : 0;
  return at_zero + sign_changes_at(seq, Rat(0)) - sign_changes_at_infinity(seq);
}

Rat cauchy_bound(const Poly& p) {
  Rat m = 0;
  for (const auto& c : p.coeffs()) m = std::max<Rat>(m, abs(c / p.lead()));
  return m + 1;
}

}  // namespace mvxop
