#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hk/errors.hpp"
#include "hk/numeric.hpp"

namespace hk {

/// Exponent of a monomial x^v: one nonnegative entry per variable.
using ExponentVec = std::vector<std::int64_t>;

/// True iff x^a divides x^b, i.e. a <= b componentwise.
bool divides(const ExponentVec& a, const ExponentVec& b);

/// Componentwise sum (the product of the monomials).
ExponentVec exponent_sum(const ExponentVec& a, const ExponentVec& b);

/// Componentwise max (the lcm of the monomials).
ExponentVec exponent_join(const ExponentVec& a, const ExponentVec& b);

/// Polynomial ring F_p[x_1..x_d] localized at the coordinate maximal ideal.
struct RegularRing {
  int d = 0;
  std::int64_t p = 0;

  RegularRing() = default;
  RegularRing(int d, std::int64_t p);

  friend bool operator==(const RegularRing&, const RegularRing&) = default;
};

/// Proper nonzero monomial ideal, stored as the lex-sorted minimal
/// generating antichain. Immutable after construction.
class MonomialIdeal {
 public:
  MonomialIdeal(RegularRing ring, std::vector<ExponentVec> gens);

  const RegularRing& ring() const { return ring_; }
  const std::vector<ExponentVec>& gens() const { return gens_; }
  /// mu: the number of minimal generators.
  int num_gens() const { return static_cast<int>(gens_.size()); }

  friend bool operator==(const MonomialIdeal&, const MonomialIdeal&) = default;

 private:
  RegularRing ring_;
  std::vector<ExponentVec> gens_;
};

/// Antichain of componentwise-minimal vectors, lex-sorted. Idempotent and
/// insensitive to input order. Rejects mixed dimensions.
std::vector<ExponentVec> minimalize(std::vector<ExponentVec> gens);

MonomialIdeal multiply(const MonomialIdeal& a, const MonomialIdeal& b);
MonomialIdeal power(const MonomialIdeal& ideal, int k);

/// Frobenius power I^[q]: every generator exponent scaled by q.
/// q must be a power of the ring characteristic (q = 1 is allowed).
MonomialIdeal bracket_power(const MonomialIdeal& ideal, std::int64_t q);

/// True iff J is contained in I (every generator of J lies in I).
bool contains(const MonomialIdeal& outer, const MonomialIdeal& inner);

/// True iff the quotient has finite length: every coordinate carries a
/// pure-power generator.
bool is_m_primary(const MonomialIdeal& ideal);

/// Largest n with I contained in m^n: the minimum generator total degree.
std::int64_t ord(const MonomialIdeal& ideal);

/// For each coordinate, the pure-power exponent b_i among the generators.
/// Throws InfiniteLength naming the first uncapped coordinate.
std::vector<std::int64_t> pure_power_bounds(const MonomialIdeal& ideal);

/// Cyclic module M = R/A given by its monomial annihilator; A absent means
/// M = R itself.
struct ModuleSpec {
  RegularRing ring;
  std::optional<MonomialIdeal> annihilator;

  static ModuleSpec free_module(RegularRing ring) { return {ring, std::nullopt}; }
  static ModuleSpec quotient(MonomialIdeal annihilator);

  /// Krull dimension of R/A: d minus the smallest hitting set of the
  /// generator supports.
  int dim() const;
};

}  // namespace hk
