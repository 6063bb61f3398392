#include <doctest.h>

#include "mvxop/seed.hpp"
#include "support.hpp"

using namespace mvxop;
using mvxop::testing::grid_params;

TEST_CASE("seed coefficients") {
  const Params p = grid_params(3, 2);
  CHECK(seed_coeff(p, 1, 1, 0) == 1);
  for (std::size_t i = 1; i <= 3; ++i) {
    Rat expect = factorial(static_cast<unsigned>(i - 1)) * p.mu[0] /
                 (pochhammer(p.alpha + 2, static_cast<unsigned>(i - 1)) * p.mu[i - 1]);
    if (i % 2 == 0) expect = -expect;
    CHECK(seed_coeff(p, i, i, 0) == expect);
    for (std::size_t j = i + 1; j <= 3; ++j) CHECK(seed_coeff(p, i, j, 1) == 0);
    for (std::size_t j = 1; j < i; ++j)
      CHECK(seed_coeff(p, i, j, 0) ==
            -((p.alpha + static_cast<long>(j) + 1) / Rat(static_cast<long>(i - j))) * (p.mu[j] / p.mu[j - 1]) *
                seed_coeff(p, i, j + 1, 0));
  }
}

TEST_CASE("N = 1 seed is a multiple of a scalar Laguerre polynomial") {
  for (unsigned m = 0; m <= 3; ++m) {
    Params p;
    p.m = m;
    p.nu = Rat(7, 2);
    p.complete();
    const SeedData s = build_seed(p);
    const Rat scale = factorial(m) / pochhammer(-p.nu, m);
    CHECK(s.F(0, 0) == scale * scalar_laguerre(m, -p.nu - 1));
    CHECK(verify_seed(p));
  }
}

TEST_CASE("m = 0 seed is constant") {
  const Params p = grid_params(3, 0);
  const SeedData s = build_seed(p);
  CHECK(s.F.degree() == 0);
  CHECK(s.Upsilon.degree() == 1);
  CHECK(s.Upsilon.coeff(0) == 0);
}

TEST_CASE("seed structure on the grid") {
  for (std::size_t N = 1; N <= 3; ++N)
    for (unsigned m = 0; m <= 2; ++m) {
      const Params p = grid_params(N, m);
      const SeedData s = build_seed(p);  // asserts the closed-form determinant
      CHECK(s.F.is_lower_triangular());
      for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j <= i; ++j) CHECK(s.F(i, j).degree() == static_cast<int>(m));
      CHECK(s.detF.degree() == static_cast<int>(m * N));
      CHECK(s.Upsilon.degree() == static_cast<int>(m * N + 1));
      CHECK(s.Phi.degree() == static_cast<int>(m * N));
      CHECK(s.Phi.is_lower_triangular());
      CHECK(s.Phi.lead().det() != 0);
      const Poly x = Poly::x();
      for (std::size_t i = 0; i < N; ++i) {
        Poly others(1);
        for (std::size_t q = 0; q < N; ++q)
          if (q != i) others *= s.F(q, q);
        const Poly diag = (Poly(-p.nu - static_cast<long>(i + 1)) * s.F(i, i) + x * s.F(i, i).derivative()) * others;
        CHECK(s.Phi(i, i) == diag);
      }
      CHECK(verify_seed(p, s.F));
      const auto cert = certify_detF(p, s);
      CHECK(cert.coefficients_positive);
      CHECK(cert.sturm_nonnegative_roots == 0);
    }
}

TEST_CASE("perturbed seed fails") {
  const Params p = grid_params(2, 2);
  MatPoly f = seed_matrix(p);
  auto c = f(1, 0).coeffs();
  c[1] += 1;
  f(1, 0) = Poly(c);
  CHECK_FALSE(verify_seed(p, f));
}

TEST_CASE("A_m on monomials") {
  for (std::size_t N = 1; N <= 3; ++N)
    for (unsigned m = 0; m <= 2; ++m) {
      const Params p = grid_params(N, m);
      const SeedData s = build_seed(p);
      const RightDiffOp a = build_Am(s);
      const Poly x = Poly::x();
      CHECK(apply_right(a, MatPoly::identity(N)).to_matpoly() == -s.Phi);
      for (unsigned n = 0; n <= 10; ++n) {
        const MatPoly r = apply_right(a, MatPoly::scalar(N, Poly::monomial(n))).to_matpoly();
        REQUIRE(r.degree() == static_cast<int>(m * N + n));
        CHECK(r.lead().is_lower_triangular());
        CHECK(r.lead().det() != 0);
        for (std::size_t i = 0; i < N; ++i) {
          Poly others = Poly::monomial(n);
          for (std::size_t q = 0; q < N; ++q)
            if (q != i) others *= s.F(q, q);
          const Poly fi = s.F(i, i);
          CHECK(r(i, i) == (Poly(p.nu + static_cast<long>(n + i + 1)) * fi - x * fi.derivative()) * others);
        }
      }
    }
}

TEST_CASE("log-derivative is invariant under a constant diagonal gauge") {
  const Params p = grid_params(3, 2);
  const SeedData s = build_seed(p);
  const Mat d = Mat::diag({Rat(2), Rat(-3, 5), Rat(7)});
  const SeedData g = seed_from_matrix(p, d * s.F);
  CHECK(RatMatFun(g.Phi, g.Upsilon) == RatMatFun(s.Phi, s.Upsilon));
  // with Upsilon held fixed A_m is unchanged
  const RightDiffOp a = build_Am(s);
  const Rat k = d.det();
  const RightDiffOp ag({RatMatFun(-g.Phi) * MatPoly::scalar(3, Poly(1 / k)), RatMatFun(MatPoly::scalar(3, s.Upsilon))});
  CHECK(ag == a);
}

TEST_CASE("N = 1, m = 0 intertwiners") {
  Params p;
  p.complete();
  const SeedData s = build_seed(p);
  const Rat c = s.F(0, 0).coeff(0);
  const RightDiffOp a = build_Am(s);
  CHECK(a.coeff(1).to_matpoly() == MatPoly::scalar(1, Poly::x() * c));
  CHECK(a.coeff(0).to_matpoly() == MatPoly::scalar(1, Poly((p.nu + 1) * c)));
  // the 1/x terms cancel: p . B_0 = (p' - p) / c
  const RightDiffOp b = build_Bm(p, s);
  for (unsigned n = 0; n <= 4; ++n) {
    const Poly mono = Poly::monomial(n);
    const RatMatFun got = apply_right(b, MatPoly::scalar(1, mono));
    CHECK(got.is_polynomial());
    CHECK(got.to_matpoly() == MatPoly::scalar(1, (mono.derivative() - mono) * Rat(1 / c)));
  }
}

TEST_CASE("factorization and intertwining on the grid") {
  for (std::size_t N = 1; N <= 3; ++N)
    for (unsigned m = 0; m <= 2; ++m) {
      const Params p = grid_params(N, m);
      const SeedData s = build_seed(p);
      const RightDiffOp t0 = build_T0(p), a = build_Am(s), b = build_Bm(p, s);
      CHECK(compose(a, b) + p.lambda() == t0);
      const RightDiffOp t1 = build_T1(p, a, b);
      CHECK(t1.order() == 2);
      CHECK(t1.coeff(2) == RatMatFun(MatPoly::scalar(N, Poly::x())));
      CHECK(compose(a, t1) == compose(t0, a));
    }
}

TEST_CASE("indicial exponents") {
  for (std::size_t N = 1; N <= 3; ++N) {
    const Params p = grid_params(N, 1);
    const IndicialResult r = indicial_exponents(m2_mat(p).transpose(), Mat(N));
    CHECK(r.numeric.empty());
    REQUIRE(r.exact.size() == N + 1);
    for (std::size_t j = 1; j <= N; ++j) CHECK(r.exact[N - j] == std::make_pair(Rat(-p.nu - static_cast<long>(j)), 1u));
    CHECK(r.exact[N] == std::make_pair(Rat(0), static_cast<unsigned>(N)));
  }
  const IndicialResult z = indicial_exponents(Mat(2), Mat(2));
  REQUIRE(z.exact.size() == 2);
  CHECK(z.exact[0] == std::make_pair(Rat(0), 2u));
  CHECK(z.exact[1] == std::make_pair(Rat(1), 2u));

  Mat u(3);
  u(0, 0) = Rat(1, 3); u(0, 1) = 5; u(1, 1) = -2; u(1, 2) = Rat(1, 2); u(2, 2) = 4;
  const IndicialResult t = indicial_exponents(u, Mat(3));
  Poly expect = poly_pow(Poly::x(), 3);
  for (std::size_t j = 0; j < 3; ++j) expect *= Poly::x() - 1 + u(j, j);
  CHECK(t.polynomial == expect);
  CHECK(t.numeric.empty());
}
