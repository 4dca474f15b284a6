#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "hk/colength.hpp"
#include "hk/monomial.hpp"
#include "hk/numeric.hpp"

namespace hk {

/// Coefficients (e_0..e_d) of the Hilbert-Samuel polynomial in the
/// binomial basis:
///   P(k) = sum_{i=0}^{d} (-1)^i e_i C(k + d - 1 - i, d - i).
struct HilbertCoefficients {
  int d = 0;
  std::vector<BigInt> e;
  int postulation = 0;       // smallest k from which the samples match P
  int verified_through = 0;  // largest sampled k

  friend bool operator==(const HilbertCoefficients&,
                         const HilbertCoefficients&) = default;
};

BigInt evaluate_binomial_poly(const HilbertCoefficients& coeffs, std::int64_t k);

struct FitBudget {
  int k_max = 16;
};

/// Memoizing length sampler k -> length(M / J^k M); shared by fits and the
/// grid diagnostics so each power is computed once.
class LengthSampler {
 public:
  virtual ~LengthSampler() = default;
  BigInt operator()(int k);

 protected:
  virtual BigInt compute(int k) = 0;

 private:
  std::map<int, BigInt> cache_;
};

using SamplerPtr = std::shared_ptr<LengthSampler>;

/// Sampler over callables (used for direct-sum modules: sum of samplers).
SamplerPtr make_sampler(std::function<BigInt(int)> fn);

/// k -> length(M / J^k M) over the regular backend, powers computed
/// incrementally.
SamplerPtr make_power_length_sampler(MonomialIdeal ideal, ModuleSpec module,
                                     ColengthOptions opt = {});

/// Solves the exact (d+1)x(d+1) system on the d+1 consecutive samples just
/// below the verification block, verifies the fit on the top d+2 samples,
/// then slides downward to the minimal postulation index. All arithmetic is
/// exact; the binomial-basis system is unitriangular, so the coefficients
/// come out as integers. Throws NoStabilization when verification fails.
/// When the module dimension is known, the leading-coefficient constraints
/// are asserted (e_i = 0 for i < d - dim M; e_0 >= 1 for full dimension).
HilbertCoefficients fit_hilbert_coefficients(
    LengthSampler& sample, int d, const FitBudget& budget,
    std::optional<int> module_dim = std::nullopt);

/// length(M / J^k M) for the regular backend.
BigInt hs_value(const MonomialIdeal& ideal, const ModuleSpec& module, int k,
                ColengthOptions opt = {});

}  // namespace hk
