#include <doctest.h>

#include "mvxop/laguerre.hpp"
#include "support.hpp"

using namespace mvxop;
using mvxop::testing::grid_params;

TEST_CASE("scalar Laguerre matches the three-term recurrence") {
  const Rat a(3, 7);
  const Poly x = Poly::x();
  Poly prev(1), cur = Poly(a + 1) - x;
  CHECK(scalar_laguerre(0, a) == prev);
  CHECK(scalar_laguerre(1, a) == cur);
  for (unsigned n = 1; n < 8; ++n) {
    Poly next = (Poly(Rat(2 * n + 1) + a) - x) * cur - Poly(Rat(n) + a) * prev;
    next *= Rat(1, n + 1);
    CHECK(scalar_laguerre(n + 1, a) == next);
    prev = cur;
    cur = next;
  }
}

TEST_CASE("parameter validation") {
  Params p;
  p.N = 2;
  p.m = 2;
  p.nu = Rat(1, 2);
  CHECK_THROWS_AS(p.complete(), std::invalid_argument);
  p.allow_small_nu = true;
  CHECK_NOTHROW(p.complete());
  Params q;
  q.alpha = Rat(-1);
  CHECK_THROWS_AS(q.complete(), std::invalid_argument);
  Params r;
  r.N = 2;
  r.mu = {Rat(1), Rat(0)};
  CHECK_THROWS_AS(r.complete(), std::invalid_argument);
  Params s;
  s.m = 3;
  s.nu = Rat(3);
  s.allow_small_nu = true;
  CHECK_NOTHROW(s.complete());
  s.nu = Rat(2);
  CHECK_THROWS_AS(s.complete(), std::invalid_argument);
}

TEST_CASE("weight for N = 1 is delta x^(nu+1) e^-x") {
  Params p;
  p.delta = {Rat(5, 3)};
  p.complete();
  const QuasiWeight w = build_weight(p);
  CHECK(w.shift() == 0);
  CHECK(w.v() == MatPoly::scalar(1, Poly::monomial(1, Rat(5, 3))));
}

TEST_CASE("L entries for N = 2") {
  Params p = grid_params(2, 0);
  const MatPoly l = laguerre_L(p);
  CHECK(l(0, 0) == Poly(1));
  CHECK(l(1, 1) == Poly(1));
  CHECK(l(0, 1).is_zero());
  CHECK(l(1, 0) == (Poly(p.alpha + 2) - Poly::x()) * Rat(2));
  CHECK(laguerre_L(grid_params(3, 0)) * laguerre_L_inverse(grid_params(3, 0)) == MatPoly::identity(3));
}

TEST_CASE("weight is symmetric positive definite at sample points") {
  for (std::size_t N = 1; N <= 3; ++N) {
    const MatPoly v = build_weight(grid_params(N, 0)).v();
    CHECK(v == v.transpose());
    for (const Rat x0 : {Rat(1, 2), Rat(1), Rat(10)}) CHECK(v.eval(x0).is_positive_definite());
  }
}

TEST_CASE("moments") {
  Params p;
  p.complete();
  const auto s = moments(p, 6);
  for (unsigned k = 0; k < 6; ++k) CHECK(s[k](0, 0) == pochhammer(p.nu + 1, k + 1));
  Params q;
  q.N = 2;
  q.complete();
  const Mat s0 = moments(q, 1)[0];
  CHECK(s0.is_symmetric());
  CHECK(s0.is_positive_definite());
}

TEST_CASE("T0 for N = 1 and the structure matrices") {
  Params p;
  p.complete();
  const RightDiffOp t0 = build_T0(p);
  const Poly x = Poly::x();
  REQUIRE(t0.order() == 2);
  CHECK(t0.coeff(2).to_matpoly() == MatPoly::scalar(1, x));
  CHECK(t0.coeff(1).to_matpoly() == MatPoly::scalar(1, Poly(p.nu + 2) - x));
  CHECK(t0.coeff(0).to_matpoly() == MatPoly::scalar(1, Poly(p.alpha - p.nu - 1)));

  const Params q = grid_params(3, 0);
  const Mat a = a_mu(q);
  CHECK(a(1, 0) == Rat(-2));
  CHECK(a(2, 1) == Rat(-3, 2));
  CHECK((a * a * a).is_zero());
  const RightDiffOp t = build_T0(q);
  CHECK(t.coeff(2).num().degree() == 1);
  CHECK(t.coeff(1).num().degree() == 1);
  CHECK(t.coeff(0).num().degree() == 0);
}

TEST_CASE("Gamma_n spectrum") {
  Params p;
  p.complete();
  CHECK(gamma_n(p, 3)(0, 0) == -3 + p.alpha - p.nu - 1);
  const Params q = grid_params(3, 2);
  for (unsigned n = 0; n < 6; ++n) {
    const Mat g = gamma_n(q, n);
    CHECK(g.is_lower_triangular());
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(g(j, j) == -Rat(n) + q.alpha - q.nu - static_cast<long>(j + 1));
      CHECK(g(j, j) != q.lambda());
    }
  }
}

TEST_CASE("low-degree MVOPs against Gram-Schmidt") {
  const Params p = grid_params(2, 0);
  const auto fam = mvop_family(p, 1);
  const auto s = moments(p, 2);
  CHECK(fam[0].P == MatPoly::identity(2));
  CHECK(fam[0].H == s[0]);
  CHECK(fam[1].P == MatPoly::scalar(2, Poly::x()) - MatPoly::constant(s[1] * s[0].inverse()));
}

TEST_CASE("MVOP invariants on the grid") {
  for (std::size_t N = 1; N <= 3; ++N) {
    const Params p = grid_params(N, 0);
    const auto fam = mvop_family(p, 5);  // asserts P_n . T0 = Gamma_n P_n
    for (const auto& d : fam) {
      CHECK(d.P.degree() == static_cast<int>(d.n));
      CHECK(d.P.lead() == Mat::identity(N));
      CHECK(d.H.is_symmetric());
      CHECK(d.H.is_positive_definite());
      CHECK(inner_w(p, d.P, d.P) == d.H);
      for (const auto& e : fam)
        if (e.n != d.n) CHECK(inner_w(p, d.P, e.P).is_zero());
    }
  }
}

TEST_CASE("three-term recurrence") {
  const Params p = grid_params(3, 0);
  const auto fam = mvop_family(p, 6, false);
  const auto s = moments(p, 2);
  CHECK(ttr(fam, 0).B == s[1] * s[0].inverse());
  for (unsigned n = 0; n <= 5; ++n) {
    const TTRCoeffs t = ttr(fam, n);
    MatPoly r = fam[n].P * Poly::x() - fam[n + 1].P - t.B * fam[n].P;
    if (n > 0) {
      r -= t.C * fam[n - 1].P;
      CHECK(t.C == fam[n].H * fam[n - 1].H.inverse());
    }
    CHECK(r.is_zero());
  }

  Params q;
  q.nu = Rat(4, 3);
  q.complete();
  const auto sc = mvop_family(q, 6, false);
  for (unsigned n = 0; n <= 5; ++n) {
    const TTRCoeffs t = ttr(sc, n);
    CHECK(t.B(0, 0) == 2 * n + q.nu + 2);
    CHECK(t.C(0, 0) == n * (n + q.nu + 1));
  }
}
