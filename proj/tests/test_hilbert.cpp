#include "doctest.h"

#include <random>

#include "hk/hilbert.hpp"
#include "test_support.hpp"

using namespace hk;

namespace {

MonomialIdeal ideal2(std::vector<ExponentVec> gens, std::int64_t p = 2) {
  return MonomialIdeal(RegularRing(2, p), std::move(gens));
}

HilbertCoefficients fit_of(const MonomialIdeal& ideal, const ModuleSpec& module,
                           int k_max = 12) {
  auto sampler = make_power_length_sampler(ideal, module);
  return fit_hilbert_coefficients(*sampler, ideal.ring().d, FitBudget{k_max},
                                  module.dim());
}

std::vector<BigInt> ints(std::initializer_list<long> xs) {
  std::vector<BigInt> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("hs_value samples the Hilbert-Samuel function") {
  RegularRing r(2, 2);
  auto free = ModuleSpec::free_module(r);
  CHECK(hs_value(ideal2({{1, 0}, {0, 1}}), free, 5) == 15);
  CHECK(hs_value(ideal2({{2, 0}, {1, 1}, {0, 2}}), free, 3) == 21);
  CHECK(hs_value(ideal2({{2, 0}, {0, 3}}), free, 2) == 18);
  CHECK_THROWS_AS(hs_value(ideal2({{1, 1}}), free, 2), InfiniteLength);
}

TEST_CASE("fit recovers the coefficients of m^2 in two variables") {
  RegularRing r(2, 2);
  auto fit = fit_of(ideal2({{2, 0}, {1, 1}, {0, 2}}), ModuleSpec::free_module(r));
  CHECK(fit.e == ints({4, 1, 0}));
  CHECK(fit.postulation == 1);
  CHECK(fit.verified_through == 12);
}

TEST_CASE("complete intersections fit to (ab, 0, 0)") {
  RegularRing r(2, 2);
  for (std::int64_t a = 1; a <= 4; ++a)
    for (std::int64_t b = 1; b <= 4; ++b) {
      auto fit = fit_of(ideal2({{a, 0}, {0, b}}), ModuleSpec::free_module(r));
      CHECK(fit.e == ints({a * b, 0, 0}));
      CHECK(fit.postulation == 1);
    }
}

TEST_CASE("maximal ideal in three variables fits to (1,0,0,0)") {
  RegularRing r(3, 2);
  MonomialIdeal m(r, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  auto fit = fit_of(m, ModuleSpec::free_module(r));
  CHECK(fit.e == ints({1, 0, 0, 0}));
}

TEST_CASE("degree drop: modules of smaller dimension lose the top coefficient") {
  RegularRing r(2, 2);
  auto mod_x = ModuleSpec::quotient(MonomialIdeal(r, {{1, 0}}));
  auto fit = fit_of(ideal2({{2, 0}, {1, 1}, {0, 2}}), mod_x);
  CHECK(fit.e[0] == 0);
  CHECK(fit.e == ints({0, -2, 0}));  // length 2k exactly
}

TEST_CASE("evaluate_binomial_poly in the binomial basis") {
  HilbertCoefficients h{.d = 2, .e = ints({4, 1, 0}), .postulation = 1,
                        .verified_through = 9};
  CHECK(evaluate_binomial_poly(h, 3) == 21);
  HilbertCoefficients one{.d = 2, .e = ints({1, 0, 0}), .postulation = 1,
                          .verified_through = 9};
  CHECK(evaluate_binomial_poly(one, 1) == 1);
  HilbertCoefficients six{.d = 2, .e = ints({6, 0, 0}), .postulation = 1,
                          .verified_through = 9};
  CHECK(evaluate_binomial_poly(six, 4) == 60);
}

TEST_CASE("fit round-trips through the samples") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 25; ++trial) {
    const int d = 2 + trial % 2;
    auto ideal = hk::testing::random_m_primary(rng, d, 2, 6, 5);
    auto module = ModuleSpec::free_module(ideal.ring());
    auto sampler = make_power_length_sampler(ideal, module);
    auto fit = fit_hilbert_coefficients(*sampler, d, FitBudget{12}, d);
    for (int k = fit.postulation; k <= 12; ++k)
      CHECK(evaluate_binomial_poly(fit, k) == (*sampler)(k));
    CHECK(fit.e[0] >= 1);
  }
}

TEST_CASE("a larger window never changes the coefficients") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 10; ++trial) {
    auto ideal = hk::testing::random_m_primary(rng, 2, 2, 6, 6);
    auto module = ModuleSpec::free_module(ideal.ring());
    auto a = fit_of(ideal, module, 9);
    auto b = fit_of(ideal, module, 15);
    CHECK(a.e == b.e);
    CHECK(a.postulation == b.postulation);
  }
}

TEST_CASE("fit rejects an insufficient budget") {
  RegularRing r(2, 2);
  auto sampler = make_power_length_sampler(ideal2({{1, 0}, {0, 1}}),
                                           ModuleSpec::free_module(r));
  CHECK_THROWS_AS(fit_hilbert_coefficients(*sampler, 2, FitBudget{6}),
                  InvalidInput);
  CHECK_NOTHROW(fit_hilbert_coefficients(*sampler, 2, FitBudget{7}));
}

TEST_CASE("non-polynomial samples raise no-stabilization") {
  // 2^k is no Hilbert-Samuel function of a 2-dimensional ring
  auto sampler = make_sampler([](int k) { return pow_int(BigInt(2), k); });
  CHECK_THROWS_AS(fit_hilbert_coefficients(*sampler, 2, FitBudget{10}),
                  NoStabilization);
  try {
    auto s2 = make_sampler([](int k) { return pow_int(BigInt(2), k); });
    fit_hilbert_coefficients(*s2, 2, FitBudget{10});
  } catch (const NoStabilization& ex) {
    CHECK(std::string(ex.what()).find("mismatch") != std::string::npos);
  }
}
