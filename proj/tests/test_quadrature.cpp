#include <doctest.h>

#include "mvxop/laguerre.hpp"
#include "mvxop/quadrature.hpp"
#include "support.hpp"

#include <cmath>

using namespace mvxop;
using mvxop::testing::grid_params;

TEST_CASE("Gauss-Laguerre rule integrates monomials exactly") {
  const Rat nu(5, 2);
  std::vector<double> x, w;
  gauss_laguerre_rule(nu, 64, x, w);
  REQUIRE(x.size() == 64);
  double total = 0;
  for (double v : w) total += v;
  CHECK(total == doctest::Approx(1).epsilon(1e-14));
  for (unsigned k = 1; k <= 6; ++k) {
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], k);
    CHECK(s == doctest::Approx(to_double(pochhammer(nu + 1, k))).epsilon(1e-13));
  }
  for (std::size_t i = 1; i < x.size(); ++i) CHECK(x[i] > x[i - 1]);
}

TEST_CASE("quadrature moments match exact moments") {
  for (std::size_t N = 1; N <= 3; ++N) {
    const Params p = grid_params(N, 0);
    const QuasiWeight w = build_weight(p);
    const auto s = moments(p, 5);
    const RatMatFun id(MatPoly::identity(N));
    for (unsigned k = 0; k < 5; ++k) {
      const QuadResult r = integrate(p.nu, RatMatFun(MatPoly::scalar(N, Poly::monomial(k))), RatMatFun(w.v_at_shift(0)), id);
      CHECK(rel_dev(r.value, to_eigen(s[k])) < 1e-12);
    }
  }
}

TEST_CASE("quadrature norms of the MVOPs match exact norms") {
  for (std::size_t N = 1; N <= 3; ++N) {
    const Params p = grid_params(N, 0);
    const QuasiWeight w = build_weight(p);
    const auto fam = mvop_family(p, 4, false);
    for (const auto& d : fam) {
      const RatMatFun pn(d.P);
      const QuadResult r = integrate(p.nu, pn, RatMatFun(w.v_at_shift(0)), pn);
      CHECK(rel_dev(r.value, to_eigen(d.H)) < 1e-12);
      if (d.n > 0) {
        const QuadResult off = integrate(p.nu, pn, RatMatFun(w.v_at_shift(0)), RatMatFun(fam[d.n - 1].P));
        CHECK(off.value.cwiseAbs().maxCoeff() < 1e-12 * to_eigen(d.H).cwiseAbs().maxCoeff());
      }
    }
  }
}

TEST_CASE("rational integrand converges") {
  // int 1/(x+1) dmu for nu = 0 equals e E1(1)
  const QuadResult r = integrate(Rat(0), RatMatFun(MatPoly::identity(1)),
                                 RatMatFun(MatPoly::identity(1), Poly::x() + 1), RatMatFun(MatPoly::identity(1)));
  CHECK(r.value(0, 0) == doctest::Approx(0.5963473623231940743).epsilon(1e-13));
}
