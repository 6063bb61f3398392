#include <doctest.h>

#include "mvxop/exceptional.hpp"
#include "support.hpp"

#include <map>

using namespace mvxop;
using mvxop::testing::grid_params;

namespace {

const Model& grid_model(std::size_t N, unsigned m) {
  static std::map<std::pair<std::size_t, unsigned>, Model> cache;
  auto it = cache.find({N, m});
  if (it == cache.end()) it = cache.emplace(std::make_pair(N, m), Model::build(grid_params(N, m), 5)).first;
  return it->second;
}

}  // namespace

TEST_CASE("exceptional weight") {
  const Model& md = grid_model(2, 2);
  for (const Rat x0 : {Rat(1, 10), Rat(1), Rat(7, 2), Rat(20)}) CHECK(md.xweight.eval(x0).is_positive_definite());
  // m = 0, N = 1: one power of x less than W
  Params p;
  p.complete();
  const Model m0 = Model::build(p, 1);
  const RatMatFun d = m0.xweight.density();
  CHECK(d.num().degree() == 0);
  CHECK(d.den().degree() == 0);
}

TEST_CASE("exceptional polynomials: degree, norm and lowering on the grid") {
  for (std::size_t N = 1; N <= 3; ++N)
    for (unsigned m = 0; m <= 2; ++m) {
      const Model& md = grid_model(N, m);
      CHECK(md.xfamily[0].Phat == -md.seed.Phi);
      CHECK(verify_factorization(md).ok);
      for (unsigned n = 0; n <= 5; ++n) {
        CAPTURE(N); CAPTURE(m); CAPTURE(n);
        CHECK(verify_xdegree(md, n).ok);
        CHECK(verify_xnorm(md, n).ok);
        CHECK(verify_lowering(md, n).ok);
        CHECK(verify_eigen_T1(md, n).ok);
        CHECK(verify_eigen_two_route(md, n).ok);
        CHECK(verify_BA(md, n).ok);
        const Mat g = md.p.lambda() * Mat::identity(N) - md.family[n].Gamma;
        for (std::size_t j = 0; j < N; ++j) CHECK(g(j, j) == md.p.nu + Rat(static_cast<long>(n + j + 1) - static_cast<long>(m)));
      }
    }
}

TEST_CASE("negative controls for lowering and eigen-equations") {
  const Model& md = grid_model(2, 1);
  CHECK_FALSE(verify_lowering(md, 2, md.p.lambda() + 1).ok);
  CHECK_FALSE(verify_eigen_T1(md, 2, md.family[3].Gamma).ok);
  // n = 0: (-Phi) . B = (Gamma_0 - lambda) Id
  const RatMatFun r = apply_right(md.B, -md.seed.Phi);
  CHECK(r == RatMatFun(MatPoly::constant(md.family[0].Gamma - md.p.lambda() * Mat::identity(2))));
}

TEST_CASE("symmetry and Pearson identities") {
  for (std::size_t N = 1; N <= 3; ++N)
    for (unsigned m = 0; m <= 2; ++m) {
      const Model& md = grid_model(N, m);
      CHECK(verify_symmetry(md).ok);
      CHECK(verify_pearson(md).ok);
      CHECK(verify_pearson_symmetrized(md).ok);
    }
  // perturbed M2 breaks symmetry
  const Model& md = grid_model(2, 1);
  auto c = md.T0.coeffs();
  MatPoly f1 = c[1].to_matpoly();
  f1(0, 1) += Poly(Rat(1, 3));
  c[1] = RatMatFun(f1);
  CHECK_FALSE(verify_symmetry(md.xweight.base, RightDiffOp(c)).ok);
  // tampered weight
  MatPoly v = md.xweight.base.v();
  v(1, 1) += Poly::x();
  CHECK_FALSE(verify_symmetry(QuasiWeight(v, 0, md.p.nu), md.T0).ok);
}

TEST_CASE("N = 1 symmetry is the scalar Pearson equation") {
  Params p;
  p.complete();
  const QuasiWeight w = build_weight(p);
  // (x w)' = (nu + 2 - x) w
  const Poly x = Poly::x();
  CHECK((x * w).derivative() == (Poly(p.nu + 2) - x) * w);
  CHECK(verify_symmetry(w, build_T0(p)).ok);
}

TEST_CASE("orthogonality by quadrature") {
  for (const auto& [N, m] : std::vector<std::pair<std::size_t, unsigned>>{{1, 2}, {2, 1}, {3, 2}}) {
    const Check c = verify_orthogonality(grid_model(N, m), 5, 1e-8);
    CAPTURE(c.detail);
    CHECK(c.ok);
  }
}

TEST_CASE("adjoint identity") {
  const Model& md = grid_model(2, 1);
  const MatPoly id = MatPoly::identity(2);
  CHECK(verify_adjoint(md, id, id, 1e-8).ok);
  CHECK(verify_adjoint(md, md.family[2].P, md.family[1].P, 1e-8).ok);
  CHECK_FALSE(verify_adjoint(md, id, id, 1e-8, {}, true).ok);
  for (unsigned n = 0; n <= 2; ++n)
    for (unsigned k = 0; k <= 2; ++k) CHECK(verify_adjoint_mvop(md, n, k, 1e-8).ok);
}

TEST_CASE("diagonal route") {
  for (std::size_t N = 1; N <= 3; ++N)
    for (unsigned m = 0; m <= 2; ++m) {
      const Model& md = grid_model(N, m);
      CHECK(conjugated_A(md.p, md.seed) == md.A);
      for (unsigned n = 0; n <= 3; ++n) {
        CHECK(verify_diagonal_exact(md, n).ok);
        const DiagonalRoute r = diagonal_route(md, n);
        for (std::size_t i = 0; i < N; ++i) CHECK(r.span_degree[i] == static_cast<int>(n + i));
      }
    }
  const Check c = verify_diagonal_orthogonality(grid_model(2, 1), 4, 1e-8);
  CAPTURE(c.detail);
  CHECK(c.ok);
}

TEST_CASE("diagonal entries are scalar exceptional Laguerre polynomials") {
  // N = 1: Q_hat_n = P_hat_n, both built from the monic Laguerre polynomial
  const Model& md = grid_model(1, 2);
  for (unsigned n = 0; n <= 4; ++n) CHECK(diagonal_route(md, n).Qhat == md.xfamily[n].Phat);
}
