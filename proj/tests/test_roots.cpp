#include <doctest.h>

#include "mvxop/roots.hpp"

#include <algorithm>
#include <cmath>

using namespace mvxop;

namespace {

std::vector<double> sorted_real(const RootResult& r) {
  std::vector<double> v;
  for (const auto& z : r.roots) v.push_back(z.real());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("roots of x^2 - 1") {
  const Poly x = Poly::x();
  const RootResult r = find_roots(x * x - 1);
  CHECK(r.converged);
  const auto v = sorted_real(r);
  CHECK(v[0] == doctest::Approx(-1).epsilon(1e-15));
  CHECK(v[1] == doctest::Approx(1).epsilon(1e-15));
}

TEST_CASE("Wilkinson polynomial of degree 10") {
  Poly w(1);
  for (int k = 1; k <= 10; ++k) w *= Poly::x() - k;
  const RootResult r = find_roots(w);
  const auto v = sorted_real(r);
  for (int k = 1; k <= 10; ++k) CHECK(std::fabs(v[k - 1] - k) < 1e-10);
  for (const auto& z : r.roots) CHECK(std::fabs(z.imag()) < 1e-10);
}

TEST_CASE("zero roots, multiple roots and complex pairs") {
  const Poly x = Poly::x();
  const Poly q = x * x * (x * x + 4) * (x + Rat(1, 3)) * (x + Rat(1, 3));
  const RootResult r = find_roots(q, {.precision_bits = 512});
  REQUIRE(r.roots.size() == 6);
  int zeros = 0, pair = 0, third = 0;
  for (const auto& z : r.roots) {
    if (std::abs(z) < 1e-30) ++zeros;
    else if (std::abs(z - std::complex<double>(0, 2)) < 1e-12 || std::abs(z - std::complex<double>(0, -2)) < 1e-12) ++pair;
    else if (std::abs(z + 1.0 / 3) < 1e-12) ++third;
  }
  CHECK(zeros == 2);
  CHECK(pair == 2);
  CHECK(third == 2);
  for (double res : r.residuals) CHECK(res <= r.threshold);
}

TEST_CASE("huge coefficient range") {
  Poly q(1);
  for (int k = 1; k <= 30; ++k) q *= Poly::x() + Poly(Rat(Rat(1, 1L << (k % 20)) * k * 1000));
  const RootResult r = find_roots(q, {.precision_bits = 256});
  CHECK(r.converged);
  CHECK(r.roots.size() == 30);
}

TEST_CASE("rationalize") {
  CHECK(rationalize(0.75) == Rat(3, 4));
  CHECK(rationalize(-3.5) == Rat(-7, 2));
  CHECK(rationalize(-4.0) == Rat(-4));
  CHECK(rationalize(1.0 / 3) == Rat(1, 3));
}

TEST_CASE("Sturm counts") {
  const Poly x = Poly::x();
  const Poly q = (x - 1) * (x - 2) * (x + 3) * (x * x + 1);
  const auto seq = sturm_sequence(q);
  CHECK(sturm_count(seq, Rat(-10), Rat(10)) == 3);
  CHECK(sturm_count(seq, Rat(0), Rat(3, 2)) == 1);
  CHECK(sturm_count(seq, Rat(1), Rat(2)) == 1);  // (1, 2]
  CHECK(count_nonnegative_roots(q) == 2);
  CHECK(count_real_roots(q) == 3);
  CHECK(count_real_roots(x * x + 1) == 0);
  CHECK(count_real_roots((x - 1) * (x - 1) * (x + 5)) == 2);
  CHECK(count_nonnegative_roots((x + 1) * (x + 2)) == 0);
  CHECK(count_nonnegative_roots(x * (x + 2)) == 1);
  CHECK(count_nonnegative_roots((x - 1) * (x - 1) * (x + 5)) == 1);
  CHECK(cauchy_bound(q) > 3);
}
