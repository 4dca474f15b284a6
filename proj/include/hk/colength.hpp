#pragma once

#include "hk/monomial.hpp"
#include "hk/numeric.hpp"

namespace hk {

/// Inclusion-exclusion count of standard monomials. Exponential in the
/// number of generators: this is the oracle path, capped at 20 generators.
BigInt colength_ie(const MonomialIdeal& ideal);

/// Corner-splitting recursion with per-invocation memoization on canonical
/// subideals. The production path.
BigInt colength_dc(const MonomialIdeal& ideal);

struct ColengthOptions {
  /// Run both algorithms and fail hard on disagreement.
  bool cross_check = false;
};

/// Dispatches to colength_dc; with cross_check also runs colength_ie and
/// throws InternalConsistency on mismatch.
BigInt colength(const MonomialIdeal& ideal, const ColengthOptions& opt = {});

/// length(M/JM) for M = R/A, i.e. colength of J + A.
BigInt module_colength(const MonomialIdeal& ideal, const ModuleSpec& module,
                       const ColengthOptions& opt = {});

/// J + A as an ideal (used by the module path and by tests).
MonomialIdeal ideal_sum(const MonomialIdeal& a, const MonomialIdeal& b);

}  // namespace hk
