#pragma once

#include "mvxop/laguerre.hpp"

#include <random>

namespace mvxop::testing {

inline Rat random_rat(std::mt19937& rng, int range = 9) {
  std::uniform_int_distribution<int> num(-range, range), den(1, range);
  Rat q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline Poly random_poly(std::mt19937& rng, int deg, int range = 9) {
  std::vector<Rat> c(static_cast<std::size_t>(deg) + 1);
  for (auto& q : c) q = random_rat(rng, range);
  if (c.back() == 0) c.back() = 1;
  return Poly(std::move(c));
}

inline MatPoly random_matpoly(std::mt19937& rng, std::size_t n, int deg) {
  MatPoly p(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p(i, j) = random_poly(rng, deg);
  return p;
}

/// Grid point used throughout: alpha = 7/2, nu = 5/2, mu = (1, 2, 3)[..N].
inline Params grid_params(std::size_t N, unsigned m) {
  Params p;
  p.N = N;
  p.m = m;
  p.alpha = Rat(7, 2);
  p.nu = Rat(5, 2);
  for (std::size_t i = 0; i < N; ++i) p.mu.push_back(Rat(static_cast<long>(i + 1)));
  p.complete();
  return p;
}

}  // namespace mvxop::testing
