#include "hk/hilbert.hpp"

#include <utility>

namespace hk {

BigInt evaluate_binomial_poly(const HilbertCoefficients& coeffs, std::int64_t k) {
  BigInt value = 0;
  for (int i = 0; i <= coeffs.d; ++i) {
    BigInt term = coeffs.e[i] * binomial(BigInt(k + coeffs.d - 1 - i), coeffs.d - i);
    value += (i % 2 == 0) ? term : -term;
  }
  return value;
}

BigInt LengthSampler::operator()(int k) {
  auto it = cache_.find(k);
  if (it != cache_.end()) return it->second;
  BigInt v = compute(k);
  return cache_.emplace(k, std::move(v)).first->second;
}

namespace {

class FnSampler final : public LengthSampler {
 public:
  explicit FnSampler(std::function<BigInt(int)> fn) : fn_(std::move(fn)) {}

 protected:
  BigInt compute(int k) override { return fn_(k); }

 private:
  std::function<BigInt(int)> fn_;
};

class PowerLengthSampler final : public LengthSampler {
 public:
  PowerLengthSampler(MonomialIdeal ideal, ModuleSpec module, ColengthOptions opt)
      : base_(std::move(ideal)),
        current_(base_),
        module_(std::move(module)),
        opt_(opt) {}

 protected:
  BigInt compute(int k) override {
    if (k < 1) throw InvalidInput("hilbert sample: k must be >= 1");
    if (k < current_k_) {
      current_ = base_;
      current_k_ = 1;
    }
    while (current_k_ < k) {
      current_ = hk::multiply(current_, base_);
      ++current_k_;
    }
    return module_colength(current_, module_, opt_);
  }

 private:
  MonomialIdeal base_;
  MonomialIdeal current_;
  int current_k_ = 1;
  ModuleSpec module_;
  ColengthOptions opt_;
};

}  // namespace

SamplerPtr make_sampler(std::function<BigInt(int)> fn) {
  return std::make_shared<FnSampler>(std::move(fn));
}

SamplerPtr make_power_length_sampler(MonomialIdeal ideal, ModuleSpec module,
                                     ColengthOptions opt) {
  return std::make_shared<PowerLengthSampler>(std::move(ideal), std::move(module), opt);
}

HilbertCoefficients fit_hilbert_coefficients(LengthSampler& sample, int d,
                                             const FitBudget& budget,
                                             std::optional<int> module_dim) {
  if (d < 1) throw InvalidInput("fit: ambient dimension must be >= 1");
  const int verify_count = d + 2;
  const int window_top = budget.k_max - verify_count;
  const int window_lo = window_top - d;
  if (window_lo < 1)
    throw InvalidInput("fit: k_max = " + std::to_string(budget.k_max) +
                       " too small, need at least " + std::to_string(2 * d + 3));

  // Peel coefficients off the window by finite differences. After removing
  // e_0..e_{i-1} the remaining interpolant has degree <= d - i, so every
  // (d-i)-th difference of the residual is the same constant (+-e_i); the
  // system is unitriangular and the e_i are forced to be integers.
  std::vector<BigInt> residual(d + 1);
  for (int j = 0; j <= d; ++j) residual[j] = sample(window_lo + j);

  HilbertCoefficients fit;
  fit.d = d;
  fit.e.assign(d + 1, BigInt(0));
  for (int i = 0; i <= d; ++i) {
    const int m = d - i;
    std::vector<BigInt> diffs = residual;
    for (int step = 0; step < m; ++step)
      for (std::size_t j = 0; j + 1 < diffs.size() - static_cast<std::size_t>(step); ++j)
        diffs[j] = diffs[j + 1] - diffs[j];
    diffs.resize(d + 1 - m);
    for (std::size_t j = 1; j < diffs.size(); ++j)
      if (diffs[j] != diffs[0])
        throw InternalConsistency("fit: residual differences not constant at level " +
                                  std::to_string(i));
    fit.e[i] = (i % 2 == 0) ? diffs[0] : -diffs[0];
    for (int j = 0; j <= d; ++j) {
      BigInt term = fit.e[i] * binomial(BigInt(window_lo + j + d - 1 - i), d - i);
      residual[j] -= (i % 2 == 0) ? term : -term;
    }
  }
  for (int j = 0; j <= d; ++j)
    if (residual[j] != 0)
      throw InternalConsistency("fit: window interpolation left a nonzero residual");

  // verify on the d+2 samples above the window
  for (int k = window_top + 1; k <= budget.k_max; ++k) {
    BigInt predicted = evaluate_binomial_poly(fit, k);
    BigInt actual = sample(k);
    if (predicted != actual)
      throw NoStabilization(
          "fit did not stabilize by k_max = " + std::to_string(budget.k_max) +
          ": at k = " + std::to_string(k) + " polynomial gives " + predicted.str() +
          " but the length is " + actual.str() + " (mismatch " +
          BigInt(actual - predicted).str() + ")");
  }

  int postulation = window_lo;
  while (postulation > 1 &&
         evaluate_binomial_poly(fit, postulation - 1) == sample(postulation - 1))
    --postulation;
  fit.postulation = postulation;
  fit.verified_through = budget.k_max;

  if (module_dim) {
    for (int i = 0; i < d - *module_dim; ++i)
      if (fit.e[i] != 0)
        throw InternalConsistency("fit: e_" + std::to_string(i) +
                                  " nonzero for a module of dimension " +
                                  std::to_string(*module_dim));
    if (*module_dim == d && fit.e[0] < 1)
      throw InternalConsistency("fit: leading coefficient must be positive");
  }
  return fit;
}

BigInt hs_value(const MonomialIdeal& ideal, const ModuleSpec& module, int k,
                ColengthOptions opt) {
  if (k < 1) throw InvalidInput("hs_value: k must be >= 1");
  return module_colength(power(ideal, k), module, opt);
}

}  // namespace hk
