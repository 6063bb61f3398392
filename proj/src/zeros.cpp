#include "mvxop/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mvxop {

Poly det_xpoly(const Model& md, unsigned n) {
  const Poly d = mat_det(md.xfamily.at(n).Phat);
  const int expect = static_cast<int>(md.p.N * (md.p.m * md.p.N + n));
  if (d.degree() != expect)
    throw std::logic_error("det(P_hat_n) has degree " + std::to_string(d.degree()) + ", expected " + std::to_string(expect));
  return d;
}

Divisibility divide_by_power(const Poly& det, const Poly& detF, unsigned power) {
  Divisibility r;
  r.power = power;
  auto [q, rem] = poly_divrem(det, poly_pow(detF, power));
  r.quotient = std::move(q);
  r.remainder = std::move(rem);
  return r;
}

namespace {

using u64 = unsigned long;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 pow_mod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  for (; e; e >>= 1, a = mul_mod(a, a, p))
    if (e & 1) r = mul_mod(r, a, p);
  return r;
}

u64 inv_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

/// Reduction of a rational polynomial mod p; false when a denominator or the
/// leading coefficient vanishes mod p.
bool reduce(const Poly& a, u64 p, std::vector<u64>& out) {
  out.clear();
  for (const Rat& c : a.coeffs()) {
    const u64 num = mpz_fdiv_ui(c.get_num_mpz_t(), p);
    const u64 den = mpz_fdiv_ui(c.get_den_mpz_t(), p);
    if (den == 0) return false;
    out.push_back(mul_mod(num, inv_mod(den, p), p));
  }
  return !out.empty() && out.back() != 0;
}

void trim(std::vector<u64>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

/// Degree of gcd over Z/p
int gcd_degree_mod(std::vector<u64> a, std::vector<u64> b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    const u64 inv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
      const u64 f = mul_mod(a.back(), inv, p);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + p - mul_mod(f, b[i], p)) % p;
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

constexpr u64 kPrimes[] = {2305843009213693951UL, 4611686018427387847UL, 1000000007UL, 998244353UL};

bool real_at(const std::complex<double>& z, double tol) { return std::fabs(z.imag()) <= tol * std::max(1.0, std::abs(z)); }

bool near(const std::complex<double>& a, const std::complex<double>& b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(a));
}

/// Groups numerically coincident roots (used only when the exact certificates fail).
std::vector<ZeroRoot> merge_numeric(const RootResult& rr, double tol) {
  std::vector<ZeroRoot> out;
  std::vector<bool> used(rr.roots.size(), false);
  for (std::size_t i = 0; i < rr.roots.size(); ++i) {
    if (used[i]) continue;
    ZeroRoot z;
    z.z = rr.roots[i];
    z.residual = rr.residuals[i];
    z.multiplicity = 1;
    for (std::size_t j = i + 1; j < rr.roots.size(); ++j)
      if (!used[j] && near(rr.roots[i], rr.roots[j], tol)) {
        used[j] = true;
        ++z.multiplicity;
        z.residual = std::max(z.residual, rr.residuals[j]);
      }
    out.push_back(z);
  }
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_fixed(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

bool coprime_certified(const Poly& a, const Poly& b) {
  if (a.degree() <= 0 || b.degree() <= 0) return !a.is_zero() && !b.is_zero();
  for (u64 p : kPrimes) {
    std::vector<u64> am, bm;
    if (!reduce(a, p, am) || !reduce(b, p, bm)) continue;
    if (gcd_degree_mod(am, bm, p) == 0) return true;
  }
  return false;
}

bool squarefree_certified(const Poly& a) {
  if (a.degree() <= 1) return !a.is_zero();
  for (u64 p : kPrimes) {
    std::vector<u64> am, dm;
    if (!reduce(a, p, am) || !reduce(a.derivative(), p, dm)) continue;
    if (gcd_degree_mod(am, dm, p) == 0) return true;
  }
  return false;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Unresolved: return "UNRESOLVED";
  }
  return "UNRESOLVED";
}

std::vector<int> single_linkage(const std::vector<std::complex<double>>& pts, double radius,
                                const std::vector<unsigned>& weights, unsigned cap) {
  const std::size_t n = pts.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<unsigned> size(n, 1);
  for (std::size_t i = 0; i < n && i < weights.size(); ++i) size[i] = weights[i];
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  struct Edge {
    double d;
    int i, j;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (const double d = std::abs(pts[i] - pts[j]); d <= radius) edges.push_back({d, static_cast<int>(i), static_cast<int>(j)});
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.d < b.d; });
  for (const auto& e : edges) {
    const int a = find(e.i), b = find(e.j);
    if (a == b || (cap > 0 && size[a] + size[b] > cap)) continue;
    parent[std::max(a, b)] = std::min(a, b);
    size[std::min(a, b)] = size[a] + size[b];
  }
  std::vector<int> id(n, -1), label(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const int r = find(static_cast<int>(i));
    if (label[r] < 0) label[r] = next++;
    id[i] = label[r];
  }
  return id;
}

ZeroReport analyze_zeros(const Model& md, unsigned n, const ZeroOptions& opt) {
  const Params& p = md.p;
  ZeroReport rep;
  rep.p = p;
  rep.n = n;
  const Poly det = det_xpoly(md, n);
  rep.degree = det.degree();
  const Poly& detF = md.seed.detF;
  const unsigned power = static_cast<unsigned>(p.N - 1);
  const Divisibility div = divide_by_power(det, detF, power);
  rep.remainder_zero = div.exact();
  const RootOptions ro{opt.precision_bits};

  std::vector<ZeroRoot> roots;
  if (rep.remainder_zero) {
    const Poly& q = div.quotient;
    const bool has_f = power > 0 && detF.degree() > 0;
    rep.multiplicities_certified = squarefree_certified(q) && (!has_f || (squarefree_certified(detF) && coprime_certified(q, detF)));
    const RootResult rq = find_roots(q, ro);
    rep.precision_bits = rq.precision_bits;
    if (rep.multiplicities_certified) {
      for (std::size_t i = 0; i < rq.roots.size(); ++i) roots.push_back({rq.roots[i], 1, false, -1, false, rq.residuals[i]});
      if (has_f) {
        const RootResult rf = find_roots(detF, ro);
        for (std::size_t i = 0; i < rf.roots.size(); ++i) roots.push_back({rf.roots[i], power, false, -1, true, rf.residuals[i]});
      }
    } else {
      const RootResult rd = find_roots(det, ro);
      roots = merge_numeric(rd, 1e-8);
    }
    if (opt.sturm) {
      rep.sturm_real = count_real_roots(q) + (has_f ? count_real_roots(detF) : 0);
      rep.sturm_positive = count_nonnegative_roots(q) + (has_f ? count_nonnegative_roots(detF) : 0);
    }
  } else {
    const RootResult rd = find_roots(det, ro);
    rep.precision_bits = rd.precision_bits;
    roots = merge_numeric(rd, 1e-8);
    if (opt.sturm) {
      rep.sturm_real = count_real_roots(det);
      rep.sturm_positive = count_nonnegative_roots(det);
    }
  }
  if (!rep.multiplicities_certified && detF.degree() > 0) {
    const RootResult rf = find_roots(detF, ro);
    for (auto& z : roots)
      for (const auto& f : rf.roots) z.coincides_upsilon = z.coincides_upsilon || near(z.z, f, 1e-8);
  }

  std::sort(roots.begin(), roots.end(), [](const ZeroRoot& a, const ZeroRoot& b) {
    return a.z.real() != b.z.real() ? a.z.real() < b.z.real() : a.z.imag() < b.z.imag();
  });
  std::vector<std::complex<double>> off;
  std::vector<unsigned> weight;
  std::vector<std::size_t> off_index;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    auto& z = roots[i];
    z.real = real_at(z.z, opt.real_tol);
    rep.max_residual = std::max(rep.max_residual, z.residual);
    if (z.real) ++rep.n_real;
    else ++rep.n_complex_distinct;
    if (z.real && z.z.real() >= 0) {
      ++rep.n_positive;
    } else {
      off.push_back(z.z);
      weight.push_back(z.multiplicity);
      off_index.push_back(i);
    }
  }
  // zeros off [0, inf), negative reals included
  double spread = 0;
  for (std::size_t i = 0; i < off.size(); ++i)
    for (std::size_t j = i + 1; j < off.size(); ++j) spread = std::max(spread, std::abs(off[i] - off[j]));
  rep.cluster_radius = opt.cluster_fraction * spread;
  const std::vector<int> plain = single_linkage(off, rep.cluster_radius);
  rep.n_clusters_plain = plain.empty() ? 0 : static_cast<unsigned>(*std::max_element(plain.begin(), plain.end()) + 1);
  // a single expected cluster needs no geometry
  const std::vector<int> ids =
      p.m == 1 ? std::vector<int>(off.size(), 0)
               : single_linkage(off, rep.cluster_radius, weight, opt.cap_clusters ? static_cast<unsigned>(p.N * p.N) : 0);
  for (std::size_t k = 0; k < ids.size(); ++k) {
    auto& z = roots[off_index[k]];
    z.cluster_id = ids[k];
    if (static_cast<std::size_t>(ids[k]) >= rep.cluster_sizes.size()) rep.cluster_sizes.resize(ids[k] + 1, 0);
    rep.cluster_sizes[ids[k]] += z.multiplicity;
  }
  rep.n_clusters = static_cast<unsigned>(rep.cluster_sizes.size());

  rep.conjugate_closed = true;
  for (const auto& z : roots) {
    if (z.real) continue;
    bool found = false;
    for (const auto& w : roots)
      found = found || (!w.real && w.multiplicity == z.multiplicity && near(std::conj(z.z), w.z, 1e-9));
    rep.conjugate_closed = rep.conjugate_closed && found;
  }

  if (opt.cross_check) {
    try {
      const RootResult rd = find_roots(det, ro);
      std::vector<bool> used(rd.roots.size(), false);
      int unmatched = 0;
      for (const auto& z : roots)
        for (unsigned k = 0; k < z.multiplicity; ++k) {
          std::size_t best = rd.roots.size();
          double bd = 0;
          for (std::size_t j = 0; j < rd.roots.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(rd.roots[j] - z.z);
            if (best == rd.roots.size() || d < bd) best = j, bd = d;
          }
          if (best == rd.roots.size() || !near(z.z, rd.roots[best], 1e-9)) ++unmatched;
          else used[best] = true;
        }
      rep.cross_check_mismatches = unmatched;
    } catch (const std::runtime_error&) {
      rep.cross_check_mismatches = rep.degree;
    }
  }

  rep.roots = std::move(roots);

  // conjecture verdicts
  const unsigned nN = n * static_cast<unsigned>(p.N);
  bool real_simple = true;
  for (const auto& z : rep.roots)
    if (z.real && z.z.real() >= 0 && z.multiplicity != 1) real_simple = false;
  const bool sturm_agrees = (rep.sturm_real < 0 || rep.sturm_real == static_cast<int>(rep.n_real)) &&
                            (rep.sturm_positive < 0 || rep.sturm_positive == static_cast<int>(rep.n_positive));
  if (!sturm_agrees || !rep.conjugate_closed) rep.real_simple = Verdict::Unresolved;
  else if (rep.n_positive == nN && real_simple) rep.real_simple = rep.multiplicities_certified ? Verdict::Pass : Verdict::Unresolved;
  else rep.real_simple = Verdict::Fail;

  unsigned complex_total = 0;
  for (unsigned s : rep.cluster_sizes) complex_total += s;
  const unsigned NN = static_cast<unsigned>(p.N * p.N);
  const bool sizes_ok = std::all_of(rep.cluster_sizes.begin(), rep.cluster_sizes.end(), [&](unsigned s) { return s == NN; });
  if (complex_total != p.m * NN) rep.clusters = sturm_agrees ? Verdict::Fail : Verdict::Unresolved;
  else if (rep.n_clusters == p.m && sizes_ok) rep.clusters = Verdict::Pass;
  else rep.clusters = Verdict::Unresolved;

  if (!rep.remainder_zero) {
    rep.coincide = Verdict::Fail;
  } else if (!rep.multiplicities_certified) {
    rep.coincide = Verdict::Unresolved;
  } else {
    unsigned upsilon_roots = 0;
    bool multiple_on_upsilon = true;
    for (const auto& z : rep.roots) {
      if (z.coincides_upsilon && z.multiplicity == power) ++upsilon_roots;
      if (z.multiplicity > 1 && !z.coincides_upsilon) multiple_on_upsilon = false;
    }
    const bool count_ok = power == 0 || upsilon_roots == p.m * p.N;
    rep.coincide = multiple_on_upsilon && count_ok ? Verdict::Pass : Verdict::Fail;
  }
  return rep;
}

std::string zeros_csv(const ZeroReport& r) {
  std::ostringstream os;
  os << "re,im,multiplicity,class,cluster_id,coincides_upsilon\n";
  for (const auto& z : r.roots) {
    os << fmt(z.z.real()) << ',' << fmt(z.z.imag()) << ',' << z.multiplicity << ',' << (z.real ? "real" : "complex") << ',';
    if (z.cluster_id >= 0) os << z.cluster_id;
    os << ',' << (z.coincides_upsilon ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string zeros_svg(const ZeroReport& r, const std::string& title) {
  const double w = 800, h = 600, margin = 50;
  double xmin = 0, xmax = 1, ymin = -1, ymax = 1;
  for (const auto& z : r.roots) {
    xmin = std::min(xmin, z.z.real());
    xmax = std::max(xmax, z.z.real());
    ymin = std::min(ymin, z.z.imag());
    ymax = std::max(ymax, z.z.imag());
  }
  const double padx = 0.05 * (xmax - xmin), pady = 0.05 * (ymax - ymin);
  xmin -= padx; xmax += padx; ymin -= pady; ymax += pady;
  auto sx = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (w - 2 * margin); };
  auto sy = [&](double y) { return h - margin - (y - ymin) / (ymax - ymin) * (h - 2 * margin); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h
     << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << fmt_fixed(sx(xmin)) << "\" y1=\"" << fmt_fixed(sy(0)) << "\" x2=\"" << fmt_fixed(sx(xmax)) << "\" y2=\""
     << fmt_fixed(sy(0)) << "\" stroke=\"#c00\" stroke-width=\"1.5\"/>\n";
  os << "<line x1=\"" << fmt_fixed(sx(0)) << "\" y1=\"" << fmt_fixed(sy(ymin)) << "\" x2=\"" << fmt_fixed(sx(0)) << "\" y2=\""
     << fmt_fixed(sy(ymax)) << "\" stroke=\"#888\" stroke-width=\"0.8\"/>\n";
  os << "<text x=\"" << margin << "\" y=\"" << margin / 2 << "\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
  os << "<text x=\"" << margin << "\" y=\"" << h - margin / 4 << "\" font-family=\"sans-serif\" font-size=\"11\">re ["
     << fmt_fixed(xmin) << ", " << fmt_fixed(xmax) << "], im [" << fmt_fixed(ymin) << ", " << fmt_fixed(ymax) << "]</text>\n";
  for (const auto& z : r.roots) {
    const std::string cx = fmt_fixed(sx(z.z.real())), cy = fmt_fixed(sy(z.z.imag()));
    if (z.real)
      os << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"3\" fill=\"#1f5fbf\"/>\n";
    else if (z.multiplicity > 1)
      os << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"3.5\" fill=\"black\"/>\n";
    else
      os << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"3\" fill=\"none\" stroke=\"black\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace mvxop
