#include <doctest.h>

#include "mvxop/rightops.hpp"
#include "support.hpp"

using namespace mvxop;
using mvxop::testing::random_matpoly;
using mvxop::testing::random_poly;

namespace {

RightDiffOp random_op(std::mt19937& rng, std::size_t n, int order, bool rational) {
  std::vector<RatMatFun> c;
  for (int j = 0; j <= order; ++j) {
    MatPoly num = random_matpoly(rng, n, 2);
    if (rational && j % 2 == 0) c.emplace_back(num, random_poly(rng, 1) * Poly::x() + 1);
    else c.emplace_back(num);
  }
  return RightDiffOp(std::move(c));
}

}  // namespace

TEST_CASE("derivative operator on x Id") {
  const RightDiffOp d({RatMatFun(MatPoly(2)), RatMatFun(MatPoly::identity(2))});
  CHECK(apply_right(d, MatPoly::scalar(2, Poly::x())) == RatMatFun(MatPoly::identity(2)));
}

TEST_CASE("compose with the identity operator") {
  std::mt19937 rng(1);
  const RightDiffOp d = random_op(rng, 2, 2, true);
  CHECK(compose(d, RightDiffOp::identity(2)) == d);
  CHECK(compose(RightDiffOp::identity(2), d) == d);
}

TEST_CASE("compose matches two-step application") {
  std::mt19937 rng(2);
  for (int t = 0; t < 6; ++t) {
    const bool rational = t % 2 == 1;
    const RightDiffOp d2 = random_op(rng, 2, 1 + t % 2, rational), d1 = random_op(rng, 2, 2, rational);
    const MatPoly p = random_matpoly(rng, 2, 4);
    CHECK(apply_right(compose(d2, d1), p) == apply_right(d1, apply_right(d2, p)));
  }
}

TEST_CASE("composition is associative") {
  std::mt19937 rng(3);
  for (int t = 0; t < 3; ++t) {
    const RightDiffOp a = random_op(rng, 2, 1, t > 0), b = random_op(rng, 2, 2, false), c = random_op(rng, 2, 1, t > 1);
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
  }
}

TEST_CASE("operator sums and scalar shifts") {
  std::mt19937 rng(4);
  const RightDiffOp a = random_op(rng, 2, 2, false);
  const MatPoly p = random_matpoly(rng, 2, 3);
  CHECK(apply_right(a + Rat(3), p) == apply_right(a, p) + RatMatFun(p * Poly(3)));
  CHECK((a - a).order() == 0);
  CHECK((a - a).coeff(0).is_zero());
}

TEST_CASE("quasi-weight derivative") {
  const Rat nu(5, 2);
  const Poly x = Poly::x();
  const QuasiWeight w(MatPoly::identity(2), 0, nu);
  const QuasiWeight d = w.derivative();
  CHECK(d.shift() == 1);
  CHECK(d.v() == MatPoly::scalar(2, Poly(nu) - x));
  // (x^nu e^-x)'' = ((nu - x)^2 - nu) x^(nu-2) e^-x
  const QuasiWeight d2 = d.derivative();
  CHECK(d2 == QuasiWeight(MatPoly::scalar(2, (Poly(nu) - x) * (Poly(nu) - x) - Poly(nu)), 2, nu));
}

TEST_CASE("quasi-weight derivative obeys Leibniz with polynomial factors") {
  std::mt19937 rng(5);
  const Rat nu(7, 3);
  for (int t = 0; t < 5; ++t) {
    const QuasiWeight w(random_matpoly(rng, 2, 3), t % 3, nu);
    const MatPoly p = random_matpoly(rng, 2, 2);
    const QuasiWeight lhs = (p * w).derivative();
    const QuasiWeight rhs = QuasiWeight(p.derivative() * w.v(), w.shift(), nu) + p * w.derivative();
    CHECK(lhs == rhs);
    CHECK((w * p).derivative() == QuasiWeight(w.v() * p.derivative(), w.shift(), nu) + w.derivative() * p);
  }
}

TEST_CASE("quasi-weight normalization and shift alignment") {
  const Rat nu(1, 2);
  const Poly x = Poly::x();
  const QuasiWeight w(MatPoly::scalar(1, x * x * (x + 1)), 3, nu);
  const QuasiWeight n = w.normalized();
  CHECK(n.shift() == 1);
  CHECK(n.v() == MatPoly::scalar(1, x + 1));
  CHECK(n == w);
  CHECK_FALSE(n == QuasiWeight(MatPoly::scalar(1, x + 1), 0, nu));
}

TEST_CASE("scalar Pearson relation for delta x^(nu+1) e^-x") {
  const Rat nu(5, 2), delta(3);
  const Poly x = Poly::x();
  const QuasiWeight w(MatPoly::scalar(1, Poly::monomial(1, delta)), 0, nu);
  // x w' = (nu + 1 - x) w and (x w)' = (nu + 2 - x) w
  CHECK(Poly::x() * w.derivative() == (Poly(nu + 1) - x) * w);
  CHECK((x * w).derivative() == (Poly(nu + 2) - x) * w);
}
