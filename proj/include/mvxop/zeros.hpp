#pragma once

// Zeros of det(P_hat_n): exact determinant and divisibility, certified
// multiplicities, high-precision roots, classification and figure output.

#include "mvxop/exceptional.hpp"
#include "mvxop/roots.hpp"

#include <complex>
#include <string>
#include <vector>

namespace mvxop {

/// Exact det(P_hat_n); throws std::logic_error when the degree is not N (mN + n).
Poly det_xpoly(const Model& md, unsigned n);

struct Divisibility {
  unsigned power = 0;
  Poly quotient, remainder;
  bool exact() const { return remainder.is_zero(); }
};

/// det = detF^power * quotient + remainder
Divisibility divide_by_power(const Poly& det, const Poly& detF, unsigned power);

/// gcd(a, b) = 1 certified by a gcd modulo a prime (false when no prime certifies it).
bool coprime_certified(const Poly& a, const Poly& b);
bool squarefree_certified(const Poly& a);

enum class Verdict { Pass, Fail, Unresolved };
std::string to_string(Verdict v);

struct ZeroOptions {
  unsigned precision_bits = 256;
  /// Real iff |Im z| <= real_tol * max(1, |z|).
  double real_tol = 1e-10;
  /// Single-linkage radius as a fraction of the diameter of the complex zeros.
  double cluster_fraction = 0.05;
  /// Merge shortest links first and never let a cluster exceed N^2 zeros (with multiplicity).
  bool cap_clusters = true;
  /// Also run the root finder on the full determinant and match multiplicities.
  bool cross_check = true;
  /// Exact count of real zeros by Sturm sequences.
  bool sturm = true;
};

struct ZeroRoot {
  std::complex<double> z;
  unsigned multiplicity = 1;
  bool real = false;
  int cluster_id = -1;  // -1 for zeros on [0, inf)
  bool coincides_upsilon = false;
  double residual = 0;
};

struct ZeroReport {
  Params p;
  unsigned n = 0;
  int degree = 0;
  unsigned precision_bits = 0;
  std::vector<ZeroRoot> roots;  // distinct zeros, sorted by (re, im)

  unsigned n_real = 0;              // distinct real zeros
  unsigned n_positive = 0;          // distinct zeros on [0, inf)
  unsigned n_complex_distinct = 0;
  unsigned n_clusters = 0;
  std::vector<unsigned> cluster_sizes;  // counted with multiplicity
  double cluster_radius = 0;
  unsigned n_clusters_plain = 0;  // plain single linkage at the same radius

  bool remainder_zero = false;           // det divisible by detF^(N-1)
  bool multiplicities_certified = false; // squarefree and coprime factors
  int sturm_real = -1;                   // exact distinct real count, -1 when not run
  int sturm_positive = -1;               // exact distinct count on [0, inf)
  int cross_check_mismatches = -1;       // full-determinant roots not matched, -1 when not run
  bool conjugate_closed = false;
  double max_residual = 0;

  // The conjectures are read on the orthogonality interval: "real" zeros are those on
  // [0, inf), and every other zero (negative reals included) is clustered.
  Verdict real_simple = Verdict::Unresolved;  // nN simple zeros on [0, inf)
  Verdict clusters = Verdict::Unresolved;     // m clusters of N^2 zeros off [0, inf)
  Verdict coincide = Verdict::Unresolved;     // multiple zeros are zeros of Upsilon, mN of multiplicity N-1
};

ZeroReport analyze_zeros(const Model& md, unsigned n, const ZeroOptions& opt = {});

/// Single-linkage clusters of points within `radius`; ids follow the input order.
/// With cap > 0, links are taken shortest first and skipped when the merged weight would exceed cap.
std::vector<int> single_linkage(const std::vector<std::complex<double>>& pts, double radius,
                                const std::vector<unsigned>& weights = {}, unsigned cap = 0);

/// re,im,multiplicity,class,cluster_id,coincides_upsilon
std::string zeros_csv(const ZeroReport& r);
std::string zeros_svg(const ZeroReport& r, const std::string& title = "");

}  // namespace mvxop
