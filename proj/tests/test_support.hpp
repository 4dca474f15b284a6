#pragma once

#include <random>
#include <vector>

#include "hk/monomial.hpp"

namespace hk::testing {

/// Seeded random m-primary ideal: pure powers in every coordinate plus a few
/// extra generators, exponents <= max_exp, at most max_gens generators before
/// minimalization.
inline MonomialIdeal random_m_primary(std::mt19937_64& rng, int d,
                                      std::int64_t p, int max_gens = 8,
                                      std::int64_t max_exp = 12) {
  std::uniform_int_distribution<std::int64_t> exp_dist(1, max_exp);
  std::vector<ExponentVec> gens;
  std::vector<std::int64_t> bounds(d);
  for (int i = 0; i < d; ++i) {
    ExponentVec v(d, 0);
    v[i] = exp_dist(rng);
    bounds[i] = v[i];
    gens.push_back(std::move(v));
  }
  const int extra = max_gens - d;
  for (int j = 0; j < extra; ++j) {
    ExponentVec v(d, 0);
    bool nonzero = false;
    for (int i = 0; i < d; ++i) {
      std::uniform_int_distribution<std::int64_t> c(0, bounds[i]);
      v[i] = c(rng);
      nonzero = nonzero || v[i] > 0;
    }
    if (nonzero) gens.push_back(std::move(v));
  }
  return MonomialIdeal(RegularRing(d, p), std::move(gens));
}

/// Brute-force standard-monomial count: walk the whole bounding box and test
/// divisibility against every generator. Independent of both engine paths.
inline BigInt enumerate_colength(const MonomialIdeal& ideal) {
  const auto bounds = pure_power_bounds(ideal);
  const int d = ideal.ring().d;
  ExponentVec v(d, 0);
  BigInt count = 0;
  while (true) {
    bool inside = false;
    for (const auto& g : ideal.gens())
      if (divides(g, v)) {
        inside = true;
        break;
      }
    if (!inside) ++count;
    int i = 0;
    while (i < d) {
      if (++v[i] < bounds[i]) break;
      v[i] = 0;
      ++i;
    }
    if (i == d) break;
  }
  return count;
}

}  // namespace hk::testing
