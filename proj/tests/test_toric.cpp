#include "doctest.h"

#include "hk/invariants.hpp"
#include "hk/toric.hpp"

using namespace hk;

namespace {

// independent oracle: scan a hand-chosen box and count S \ I directly
BigInt oracle_count(const SemigroupIdeal& ideal, std::int64_t box) {
  BigInt n = 0;
  for (std::int64_t x = 0; x <= box; ++x)
    for (std::int64_t y = 0; y <= box; ++y) {
      Point2 v{x, y};
      if (semigroup_member(ideal.ring(), v) && !ideal_member(ideal, v)) ++n;
    }
  return n;
}

SemigroupIdeal a1_m(const ToricRing2& ring) {
  return SemigroupIdeal(ring, {{2, 0}, {1, 1}, {0, 2}});
}

}  // namespace

TEST_CASE("lattice membership from a congruence") {
  auto ring = a1_ring();
  CHECK(semigroup_member(ring, {1, 1}));
  CHECK_FALSE(semigroup_member(ring, {1, 0}));
  CHECK_FALSE(semigroup_member(ring, {-1, 1}));
  CHECK(semigroup_member(ring, {0, 0}));
  CHECK(semigroup_member(ring, {4, 2}));
}

TEST_CASE("lattice from generators equals lattice from congruence") {
  auto from_gens = Lattice2::from_generators({{2, 0}, {1, 1}});
  auto from_cong = Lattice2::from_congruence(1, 1, 2);
  CHECK(from_gens == from_cong);
  CHECK(from_gens.index() == 2);
  CHECK(from_gens.contains({3, 5}));
  CHECK_FALSE(from_gens.contains({3, 4}));
}

TEST_CASE("degenerate lattices are rejected") {
  CHECK_THROWS_AS(Lattice2::from_generators({{2, 0}}), InvalidInput);
  CHECK_THROWS_AS(Lattice2::from_generators({{1, 1}, {2, 2}}), InvalidInput);
}

TEST_CASE("ring validation") {
  auto lattice = Lattice2::from_congruence(1, 1, 2);
  CHECK_THROWS_AS(ToricRing2({2, 0}, {0, 1}, lattice, 2), InvalidInput);
  CHECK_THROWS_AS(ToricRing2({1, 0}, {-1, 0}, lattice, 2), InvalidInput);
  CHECK_THROWS_AS(ToricRing2({1, 0}, {0, 1}, lattice, 6), InvalidInput);
  CHECK_NOTHROW(ToricRing2({1, 2}, {2, 1}, lattice, 3));
}

TEST_CASE("ideal membership in the bracket square") {
  auto ring = a1_ring();
  SemigroupIdeal msq(ring, {{4, 0}, {2, 2}, {0, 4}});
  CHECK_FALSE(ideal_member(msq, {3, 1}));
  CHECK(ideal_member(msq, {5, 1}));
  for (const auto& g : msq.gens()) CHECK(ideal_member(msq, g));
}

TEST_CASE("generators must be semigroup elements and minimal") {
  auto ring = a1_ring();
  CHECK_THROWS_AS(SemigroupIdeal(ring, {{1, 0}}), InvalidInput);
  CHECK_THROWS_AS(SemigroupIdeal(ring, {{0, 0}}), InvalidInput);
  SemigroupIdeal redundant(ring, {{2, 0}, {4, 2}, {0, 2}, {1, 1}});
  CHECK(redundant.gens() == std::vector<Point2>{{0, 2}, {1, 1}, {2, 0}});
}

TEST_CASE("toric colengths on the quadric cone") {
  auto ring = a1_ring();
  auto m = a1_m(ring);
  CHECK(toric_colength(m) == 1);
  CHECK(toric_colength(toric_bracket(m, 2)) == 6);
  auto m2 = toric_power(m, 2);
  CHECK(m2.gens() ==
        std::vector<Point2>{{0, 4}, {1, 3}, {2, 2}, {3, 1}, {4, 0}});
  CHECK(toric_colength(m2) == 4);
}

TEST_CASE("toric colength agrees with the naive box oracle") {
  auto ring = a1_ring();
  auto m = a1_m(ring);
  for (int k = 1; k <= 5; ++k)
    CHECK(toric_colength(toric_power(m, k)) == oracle_count(toric_power(m, k), 40));
  for (std::int64_t q : {2, 4, 8})
    CHECK(toric_colength(toric_bracket(m, q)) ==
          oracle_count(toric_bracket(m, q), 64));
  // a slanted cone: S = cone((1,0),(1,2)) in the full lattice
  ToricRing2 slant({1, 0}, {1, 2}, Lattice2::from_generators({{1, 0}, {0, 1}}), 2);
  SemigroupIdeal ideal(slant, {{1, 0}, {1, 2}, {1, 1}});
  CHECK(toric_colength(ideal) == oracle_count(ideal, 30));
  SemigroupIdeal wide(slant, {{2, 0}, {1, 1}, {2, 3}, {1, 2}});
  CHECK(toric_colength(wide) == oracle_count(wide, 30));
}

TEST_CASE("bracket and ordinary toric powers commute") {
  auto ring = a1_ring();
  auto m = a1_m(ring);
  for (int k = 1; k <= 4; ++k)
    for (std::int64_t q : {2, 4})
      CHECK(toric_bracket(toric_power(m, k), q) ==
            toric_power(toric_bracket(m, q), k));
  CHECK(toric_bracket(m, 1) == m);
  CHECK_THROWS_AS(toric_bracket(m, 3), InvalidInput);
}

TEST_CASE("the A1 Hilbert-Kunz sequence of m is exactly 3/2") {
  auto ring = a1_ring();
  auto m = a1_m(ring);
  for (std::int64_t q : {2, 4, 8, 16})
    CHECK(Rational(toric_colength(toric_bracket(m, q))) ==
          Rational(3, 2) * Rational(q * q));
}

TEST_CASE("e(m) = 2 on A1 from the Hilbert-Samuel fit") {
  ToricBackend backend(a1_ring());
  auto m = a1_m(backend.ring());
  auto fit = fit_ideal_coefficients(backend, m, FitBudget{10});
  CHECK(fit.e[0] == 2);
  CHECK(fit.e[1] == 1);
  CHECK(fit.e[2] == 0);
  CHECK(fit.postulation == 1);
}

TEST_CASE("maximal ideal generators form the Hilbert basis") {
  auto ring = a1_ring();
  CHECK(maximal_ideal(ring).gens() ==
        std::vector<Point2>{{0, 2}, {1, 1}, {2, 0}});
  ToricRing2 slant({1, 0}, {1, 3}, Lattice2::from_generators({{1, 0}, {0, 1}}), 2);
  CHECK(maximal_ideal(slant).gens() ==
        std::vector<Point2>{{1, 0}, {1, 1}, {1, 2}, {1, 3}});
}

TEST_CASE("certification failure is an explicit error") {
  ToricOptions tight;
  tight.cert_bound = 1;
  auto ring = a1_ring(2, tight);
  // generators force ray multiples of 4, beyond an artificially tiny cap
  SemigroupIdeal ideal(ring, {{4, 0}, {2, 2}, {0, 4}});
  // adaptive cap rescues bracket-scale ideals, so shrink it via a non
  // m-primary ideal instead: (1,1) alone never certifies the rays
  SemigroupIdeal diag(ring, {{1, 1}});
  CHECK_THROWS_AS(toric_colength(diag), CannotCertify);
  CHECK(toric_colength(ideal) == 6);
}

TEST_CASE("enumeration cap raises a budget error") {
  ToricOptions small;
  small.enumeration_cap = 10;
  auto ring = a1_ring(2, small);
  SemigroupIdeal m(ring, {{2, 0}, {1, 1}, {0, 2}});
  CHECK_THROWS_AS(toric_colength(toric_bracket(m, 8)), BudgetExceeded);
}
