#pragma once

#include <concepts>
#include <cstdint>

#include "hk/colength.hpp"
#include "hk/hilbert.hpp"
#include "hk/monomial.hpp"
#include "hk/toric.hpp"

namespace hk {

/// The abstract colength-provider contract: exact ideal arithmetic plus an
/// exact colength, finite precisely on m-primary ideals. Both ring
/// backends model it; everything in invariants.hpp is generic over it.
template <class B>
concept ColengthProvider = requires(const B& b, const typename B::Ideal& ideal,
                                    const typename B::Module& module, int k,
                                    std::int64_t q) {
  { b.dim() } -> std::convertible_to<int>;
  { b.characteristic() } -> std::convertible_to<std::int64_t>;
  { b.multiply(ideal, ideal) } -> std::same_as<typename B::Ideal>;
  { b.power(ideal, k) } -> std::same_as<typename B::Ideal>;
  { b.bracket_power(ideal, q) } -> std::same_as<typename B::Ideal>;
  { b.colength(ideal) } -> std::same_as<BigInt>;
  { b.trivial_module() } -> std::same_as<typename B::Module>;
  { b.module_dim(module) } -> std::convertible_to<int>;
  { b.module_colength(ideal, module) } -> std::same_as<BigInt>;
  { B::kExactHilbertKunz } -> std::convertible_to<bool>;
};

/// F_p[x_1..x_d]: Frobenius is flat, so e_HK(I) = colength(I) and every
/// bracket length scales exactly by q^d.
class RegularBackend {
 public:
  using Ideal = MonomialIdeal;
  using Module = ModuleSpec;
  static constexpr bool kExactHilbertKunz = true;

  explicit RegularBackend(RegularRing ring, ColengthOptions opt = {})
      : ring_(ring), opt_(opt) {}

  const RegularRing& ring() const { return ring_; }
  int dim() const { return ring_.d; }
  std::int64_t characteristic() const { return ring_.p; }

  Ideal multiply(const Ideal& a, const Ideal& b) const { return hk::multiply(a, b); }
  Ideal power(const Ideal& ideal, int k) const { return hk::power(ideal, k); }
  Ideal bracket_power(const Ideal& ideal, std::int64_t q) const {
    return hk::bracket_power(ideal, q);
  }
  BigInt colength(const Ideal& ideal) const { return hk::colength(ideal, opt_); }

  Module trivial_module() const { return ModuleSpec::free_module(ring_); }
  int module_dim(const Module& module) const { return module.dim(); }
  BigInt module_colength(const Ideal& ideal, const Module& module) const {
    return hk::module_colength(ideal, module, opt_);
  }

  SamplerPtr power_length_sampler(const Ideal& ideal, const Module& module) const {
    return make_power_length_sampler(ideal, module, opt_);
  }

 private:
  RegularRing ring_;
  ColengthOptions opt_;
};

struct ToricTrivialModule {};  // the toric backend only supports M = R

/// 2-dimensional affine semigroup ring backend, colength by certified
/// enumeration.
class ToricBackend {
 public:
  using Ideal = SemigroupIdeal;
  using Module = ToricTrivialModule;
  static constexpr bool kExactHilbertKunz = false;

  explicit ToricBackend(ToricRing2 ring) : ring_(std::move(ring)) {}

  const ToricRing2& ring() const { return ring_; }
  int dim() const { return 2; }
  std::int64_t characteristic() const { return ring_.p(); }

  Ideal multiply(const Ideal& a, const Ideal& b) const { return toric_multiply(a, b); }
  Ideal power(const Ideal& ideal, int k) const { return toric_power(ideal, k); }
  Ideal bracket_power(const Ideal& ideal, std::int64_t q) const {
    return toric_bracket(ideal, q);
  }
  BigInt colength(const Ideal& ideal) const { return toric_colength(ideal); }

  Module trivial_module() const { return {}; }
  int module_dim(const Module&) const { return 2; }
  BigInt module_colength(const Ideal& ideal, const Module&) const {
    return toric_colength(ideal);
  }

 private:
  ToricRing2 ring_;
};

static_assert(ColengthProvider<RegularBackend>);
static_assert(ColengthProvider<ToricBackend>);

}  // namespace hk
