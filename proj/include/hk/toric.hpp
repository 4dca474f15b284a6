#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hk/errors.hpp"
#include "hk/numeric.hpp"

namespace hk {

using Point2 = std::array<std::int64_t, 2>;

/// Finite-index sublattice of Z^2, stored as a Hermite-form basis
/// [[a, b], [0, c]] with a, c > 0 and 0 <= b < c.
class Lattice2 {
 public:
  static Lattice2 from_generators(const std::vector<Point2>& gens);
  /// L = { v : alpha*x + beta*y == 0 (mod modulus) }.
  static Lattice2 from_congruence(std::int64_t alpha, std::int64_t beta,
                                  std::int64_t modulus);

  bool contains(const Point2& v) const;
  std::int64_t index() const { return a_ * c_; }
  std::array<Point2, 2> basis() const { return {Point2{a_, b_}, Point2{0, c_}}; }

  friend bool operator==(const Lattice2&, const Lattice2&) = default;

 private:
  Lattice2(std::int64_t a, std::int64_t b, std::int64_t c) : a_(a), b_(b), c_(c) {}
  std::int64_t a_, b_, c_;
};

struct ToricOptions {
  std::int64_t cert_bound = 64;        // floor for the ray-multiple search
  std::int64_t enumeration_cap = 50'000'000;  // max lattice box points
};

/// 2-dimensional normal affine semigroup ring: S = cone(ray1, ray2) ∩ L,
/// localized at the monomial maximal ideal, characteristic p.
class ToricRing2 {
 public:
  ToricRing2(Point2 ray1, Point2 ray2, Lattice2 lattice, std::int64_t p,
             ToricOptions options = {});

  const Point2& ray(int i) const { return i == 0 ? ray1_ : ray2_; }
  const Lattice2& lattice() const { return lattice_; }
  std::int64_t p() const { return p_; }
  const ToricOptions& options() const { return options_; }

  bool in_cone(const Point2& v) const;

  friend bool operator==(const ToricRing2& x, const ToricRing2& y) {
    return x.ray1_ == y.ray1_ && x.ray2_ == y.ray2_ && x.lattice_ == y.lattice_ &&
           x.p_ == y.p_;
  }

 private:
  Point2 ray1_, ray2_;
  Lattice2 lattice_;
  std::int64_t p_;
  ToricOptions options_;
};

/// v in S = cone ∩ L.
bool semigroup_member(const ToricRing2& ring, const Point2& v);

/// Proper nonzero ideal of S: generators minimal under the S-order
/// (u <= v iff v - u in S), canonically sorted.
class SemigroupIdeal {
 public:
  SemigroupIdeal(ToricRing2 ring, std::vector<Point2> gens);

  const ToricRing2& ring() const { return ring_; }
  const std::vector<Point2>& gens() const { return gens_; }
  int num_gens() const { return static_cast<int>(gens_.size()); }

  friend bool operator==(const SemigroupIdeal& x, const SemigroupIdeal& y) {
    return x.ring_ == y.ring_ && x.gens_ == y.gens_;
  }

 private:
  ToricRing2 ring_;
  std::vector<Point2> gens_;
};

bool ideal_member(const SemigroupIdeal& ideal, const Point2& v);

SemigroupIdeal toric_multiply(const SemigroupIdeal& a, const SemigroupIdeal& b);
SemigroupIdeal toric_power(const SemigroupIdeal& ideal, int k);
SemigroupIdeal toric_bracket(const SemigroupIdeal& ideal, std::int64_t q);

/// Exact count of S-points outside the ideal. Certifies m-primarity by
/// finding a multiple of each extremal ray inside the ideal (the certificate
/// bounds the enumeration region); throws CannotCertify or BudgetExceeded.
BigInt toric_colength(const SemigroupIdeal& ideal);

/// Hilbert basis of S (irreducible nonzero elements): the minimal
/// generators of the monomial maximal ideal.
SemigroupIdeal maximal_ideal(const ToricRing2& ring);

/// Largest n with I contained in m^n.
std::int64_t toric_ord(const SemigroupIdeal& ideal);

/// The quadric-cone model ring: cone(e1, e2) ∩ {even coordinate sum}.
ToricRing2 a1_ring(std::int64_t p = 2, ToricOptions options = {});

}  // namespace hk
