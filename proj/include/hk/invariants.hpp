#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hk/backend.hpp"
#include "hk/hilbert.hpp"
#include "hk/numeric.hpp"

namespace hk {

// ---------------------------------------------------------------------------
// report types

struct LimitTerm {
  int e = 0;              // Frobenius exponent
  std::int64_t q = 0;     // p^e
  Rational value;
};

/// q-indexed exact sequence plus its two-point Richardson extrapolation
/// under the O(1/q) error model.
struct LimitEstimate {
  std::vector<LimitTerm> terms;
  Rational extrapolated;
  std::string method;
  std::string error_model = "O(1/q)";
  Rational error_constant;  // fitted c in  a(q) ~ limit + c/q
};

enum class Verdict { holds, equality, fails };

std::string to_string(Verdict v);

/// Evaluated sides of an inequality, oriented so that slack >= 0 means the
/// statement holds; verdicts on inexact backends are tolerance-gated and
/// flagged numerical.
struct InequalityReport {
  std::string name;
  Rational lhs;
  Rational rhs;
  Rational slack;
  Verdict verdict = Verdict::holds;
  bool numerical = false;
};

struct DecomposeRow {
  int k = 0;
  Rational ehk_power;            // e_HK(I^k)
  Rational residual;             // r(k)
  Rational residual_normalized;  // r(k) / k^(d-1)
  std::optional<Rational> exact_tail;
  bool in_tail_check = false;
  bool tail_match = false;
};

struct DecomposeReport {
  HilbertCoefficients base_fit;  // Hilbert coefficients of I itself
  Rational multiplicity;         // e(I)
  LimitEstimate beta;            // e_1(I^[q])/q^d sequence
  std::vector<DecomposeRow> rows;
  bool exact_model = false;      // true on the regular backend
  bool ok = false;
};

struct AdditivityRow {
  int e = 0;
  std::int64_t q = 0;
  BigInt e1_left, e1_right, e1_sum;
  Rational left_normalized, right_normalized, sum_normalized;
  bool exact = false;  // e1_sum == e1_left + e1_right
};

struct AdditivityReport {
  std::vector<AdditivityRow> rows;
  bool all_exact = false;
};

struct UniformRow {
  int e = 0;
  std::int64_t q = 0;
  Rational deviation;          // D(e)
  Rational deviation_times_q;  // D(e) * q
};

struct UniformReport {
  std::vector<Rational> ehk_references;  // e_HK(I^k), k = 1..K
  std::vector<UniformRow> rows;
  Rational fitted_constant;  // max_e D(e) * q
  bool nonincreasing = false;
  bool ok = false;
};

struct BoundRow {
  int e = 0;
  std::int64_t q = 0;
  int k = 0;
  BigInt length;
  Rational bound;
  bool ok = false;
};

struct BoundReport {
  Rational fitted_B;    // sup_n length(M/I^n M)/n^dim
  Rational constant_C;  // B * mu^dim
  int mu = 0;
  int module_dim = 0;
  std::vector<BoundRow> rows;
  bool all_ok = false;
};

struct NorthcottReport {
  InequalityReport inequality;
  LimitEstimate beta;
  Rational multiplicity;
  Rational hilbert_kunz;
  std::optional<Rational> elias_reported;  // (e(R)-1) e(I), reported only
};

// ---------------------------------------------------------------------------
// sequence machinery

namespace detail {

inline LimitEstimate finish_limit(std::vector<LimitTerm> terms, std::string method) {
  LimitEstimate est;
  est.terms = std::move(terms);
  est.method = std::move(method);
  if (est.terms.size() >= 2) {
    const LimitTerm& a = est.terms[est.terms.size() - 2];
    const LimitTerm& b = est.terms.back();
    const Rational q1(a.q), q2(b.q);
    est.extrapolated = (q2 * b.value - q1 * a.value) / (q2 - q1);
    est.error_constant = (a.value - b.value) * q1 * q2 / (q2 - q1);
  } else if (est.terms.size() == 1) {
    est.extrapolated = est.terms.front().value;
    est.error_constant = 0;
  }
  return est;
}

}  // namespace detail

/// Powers of a fixed ideal, computed once and shared across the q-grid.
template <ColengthProvider B>
class PowerCache {
 public:
  PowerCache(const B& backend, typename B::Ideal base) : backend_(&backend) {
    powers_.push_back(std::move(base));
  }
  const typename B::Ideal& power(int k) {
    if (k < 1) throw InvalidInput("PowerCache: k must be >= 1");
    while (static_cast<int>(powers_.size()) < k)
      powers_.push_back(backend_->multiply(powers_.back(), powers_.front()));
    return powers_[static_cast<std::size_t>(k) - 1];
  }

 private:
  const B* backend_;
  std::vector<typename B::Ideal> powers_;
};

template <ColengthProvider B>
std::shared_ptr<PowerCache<B>> make_power_cache(const B& backend,
                                                typename B::Ideal base) {
  return std::make_shared<PowerCache<B>>(backend, std::move(base));
}

/// k -> length(M/(I^[q])^k M), realized as bracket powers of the cached
/// ordinary powers ((I^k)^[q] and (I^[q])^k agree as ideals).
template <ColengthProvider B>
SamplerPtr bracket_grid_sampler(const B& backend,
                                std::shared_ptr<PowerCache<B>> powers,
                                std::int64_t q, typename B::Module module) {
  const B* b = &backend;
  return make_sampler([b, powers, q, module](int k) {
    return b->module_colength(b->bracket_power(powers->power(k), q), module);
  });
}

/// Hilbert coefficients of length(M/I^k M) over any backend.
template <ColengthProvider B>
HilbertCoefficients fit_ideal_coefficients(const B& backend,
                                           const typename B::Ideal& ideal,
                                           const typename B::Module& module,
                                           const FitBudget& budget) {
  auto powers = make_power_cache(backend, ideal);
  const B* b = &backend;
  auto module_copy = module;
  auto sampler = make_sampler([b, powers, module_copy](int k) {
    return b->module_colength(powers->power(k), module_copy);
  });
  return fit_hilbert_coefficients(*sampler, backend.dim(), budget,
                                  backend.module_dim(module));
}

template <ColengthProvider B>
HilbertCoefficients fit_ideal_coefficients(const B& backend,
                                           const typename B::Ideal& ideal,
                                           const FitBudget& budget) {
  return fit_ideal_coefficients(backend, ideal, backend.trivial_module(), budget);
}

// ---------------------------------------------------------------------------
// Hilbert-Kunz sequences and limits

/// Exact e_HK on flat-Frobenius backends: the colength itself.
template <ColengthProvider B>
Rational ehk_exact(const B& backend, const typename B::Ideal& ideal) {
  static_assert(B::kExactHilbertKunz,
                "ehk_exact needs a flat-Frobenius backend; use ehk_sequence");
  return Rational(backend.colength(ideal));
}

/// Terms length(R/I^[p^e]) / p^(ed) for e = 1..E with Richardson
/// extrapolation. On budget exhaustion rethrows with the largest completed e.
template <ColengthProvider B>
LimitEstimate ehk_sequence(const B& backend, const typename B::Ideal& ideal, int E) {
  if (E < 1) throw InvalidInput("ehk_sequence: E must be >= 1");
  const int d = backend.dim();
  std::vector<LimitTerm> terms;
  std::int64_t q = 1;
  for (int e = 1; e <= E; ++e) {
    q *= backend.characteristic();
    try {
      BigInt len = backend.colength(backend.bracket_power(ideal, q));
      terms.push_back({e, q, Rational(len) / Rational(pow_int(BigInt(q), d))});
    } catch (const BudgetExceeded& ex) {
      throw BudgetExceeded(std::string(ex.what()) +
                               " (largest completed Frobenius exponent: " +
                               std::to_string(e - 1) + ")",
                           e - 1);
    }
  }
  return detail::finish_limit(std::move(terms), "richardson-2pt");
}

/// Terms e_i(I^[p^e], M) / p^(ed) for e = 1..E. beta(I) is i = 1 with M = R.
template <ColengthProvider B>
LimitEstimate ei_limit_sequence(const B& backend, const typename B::Ideal& ideal,
                                int i, int E, const FitBudget& budget,
                                const typename B::Module& module) {
  const int d = backend.dim();
  if (i < 0 || i > d) throw InvalidInput("ei_limit_sequence: need 0 <= i <= d");
  if (E < 1) throw InvalidInput("ei_limit_sequence: E must be >= 1");
  auto powers = make_power_cache(backend, ideal);
  std::vector<LimitTerm> terms;
  std::int64_t q = 1;
  for (int e = 1; e <= E; ++e) {
    q *= backend.characteristic();
    auto sampler = bracket_grid_sampler(backend, powers, q, module);
    HilbertCoefficients fit;
    try {
      fit = fit_hilbert_coefficients(*sampler, d, budget, backend.module_dim(module));
    } catch (const NoStabilization& ex) {
      throw NoStabilization("e_" + std::to_string(i) + " fit at q = " +
                            std::to_string(q) + ": " + ex.what());
    }
    terms.push_back({e, q, Rational(fit.e[i]) / Rational(pow_int(BigInt(q), d))});
  }
  return detail::finish_limit(std::move(terms), "richardson-2pt");
}

template <ColengthProvider B>
LimitEstimate ei_limit_sequence(const B& backend, const typename B::Ideal& ideal,
                                int i, int E, const FitBudget& budget) {
  return ei_limit_sequence(backend, ideal, i, E, budget, backend.trivial_module());
}

/// e_HK(I^k): exact colength where Frobenius is flat, extrapolated otherwise.
template <ColengthProvider B>
Rational ehk_of_power(const B& backend, PowerCache<B>& powers, int k, int E) {
  if constexpr (B::kExactHilbertKunz) {
    (void)E;
    return Rational(backend.colength(powers.power(k)));
  } else {
    return ehk_sequence(backend, powers.power(k), E).extrapolated;
  }
}

// ---------------------------------------------------------------------------
// checks

namespace detail {

inline Verdict gate(const Rational& slack, bool numerical, const Rational& tol) {
  if (!numerical) {
    if (slack == 0) return Verdict::equality;
    return slack > 0 ? Verdict::holds : Verdict::fails;
  }
  if (abs(slack) <= tol) return Verdict::equality;
  return slack > 0 ? Verdict::holds : Verdict::fails;
}

}  // namespace detail

/// e_HK(I^k) = e(I) C(k+d-1, d) - beta(I) C(k+d-2, d-1) + o(k^(d-1)):
/// computes the residual r(k) and, on the exact backend, matches it against
/// the closed tail sum_{i>=2} (-1)^i e_i(I) C(k+d-1-i, d-i).
template <ColengthProvider B>
DecomposeReport decompose_check(const B& backend, const typename B::Ideal& ideal,
                                int E, int K, const FitBudget& budget) {
  if (K < 1) throw InvalidInput("decompose_check: K must be >= 1");
  const int d = backend.dim();
  DecomposeReport report;
  report.exact_model = B::kExactHilbertKunz;
  report.base_fit = fit_ideal_coefficients(backend, ideal, budget);
  report.multiplicity = Rational(report.base_fit.e[0]);
  report.beta = ei_limit_sequence(backend, ideal, 1, E, budget);

  auto powers = make_power_cache(backend, ideal);
  bool ok = true;
  for (int k = 1; k <= K; ++k) {
    DecomposeRow row;
    row.k = k;
    row.ehk_power = ehk_of_power(backend, *powers, k, E);
    row.residual = row.ehk_power -
                   report.multiplicity * Rational(binomial(BigInt(k + d - 1), d)) +
                   report.beta.extrapolated * Rational(binomial(BigInt(k + d - 2), d - 1));
    row.residual_normalized = row.residual / Rational(pow_int(BigInt(k), d - 1));
    if (report.exact_model) {
      BigInt tail = 0;
      for (int i = 2; i <= d; ++i) {
        BigInt term = report.base_fit.e[i] * binomial(BigInt(k + d - 1 - i), d - i);
        tail += (i % 2 == 0) ? term : -term;
      }
      row.exact_tail = Rational(tail);
      row.in_tail_check = k >= report.base_fit.postulation;
      row.tail_match = row.residual == *row.exact_tail;
      if (row.in_tail_check && !row.tail_match) ok = false;
    }
    report.rows.push_back(std::move(row));
  }
  if (!report.exact_model) {
    // tail criterion: |r(k)|/k^(d-1) nonincreasing over the sampled tail
    const std::size_t start = report.rows.size() / 2;
    for (std::size_t j = start; j + 1 < report.rows.size(); ++j) {
      if (abs(report.rows[j + 1].residual_normalized) >
          abs(report.rows[j].residual_normalized))
        ok = false;
      report.rows[j + 1].in_tail_check = true;
    }
    if (start < report.rows.size()) report.rows[start].in_tail_check = true;
  }
  report.ok = ok;
  return report;
}

/// e_HK(I^n) <= e(I) C(n+d-2, d) + e_HK(I) C(n+d-2, d-1); equality
/// characterizes stable ideals.
template <ColengthProvider B>
InequalityReport wy_check(const B& backend, const typename B::Ideal& ideal, int n,
                          int E, const FitBudget& budget,
                          const Rational& tolerance = Rational(1, 100)) {
  if (n < 1) throw InvalidInput("wy_check: n must be >= 1");
  const int d = backend.dim();
  auto powers = make_power_cache(backend, ideal);
  InequalityReport report;
  report.name = "watanabe-yoshida:n=" + std::to_string(n);
  report.numerical = !B::kExactHilbertKunz;
  report.lhs = ehk_of_power(backend, *powers, n, E);
  const Rational e0 = Rational(fit_ideal_coefficients(backend, ideal, budget).e[0]);
  const Rational ehk_base = ehk_of_power(backend, *powers, 1, E);
  report.rhs = e0 * Rational(binomial(BigInt(n + d - 2), d)) +
               ehk_base * Rational(binomial(BigInt(n + d - 2), d - 1));
  report.slack = report.rhs - report.lhs;
  report.verdict = detail::gate(report.slack, report.numerical, tolerance);
  return report;
}

/// beta(I) >= e(I) - e_HK(I) (Northcott passed to the limit).
template <ColengthProvider B>
NorthcottReport northcott_check(const B& backend, const typename B::Ideal& ideal,
                                int E, const FitBudget& budget,
                                const Rational& tolerance = Rational(1, 100)) {
  NorthcottReport report;
  report.beta = ei_limit_sequence(backend, ideal, 1, E, budget);
  report.multiplicity = Rational(fit_ideal_coefficients(backend, ideal, budget).e[0]);
  if constexpr (B::kExactHilbertKunz)
    report.hilbert_kunz = ehk_exact(backend, ideal);
  else
    report.hilbert_kunz = ehk_sequence(backend, ideal, E).extrapolated;
  report.inequality.name = "northcott-limit";
  report.inequality.numerical = !B::kExactHilbertKunz;
  report.inequality.lhs = report.beta.extrapolated;
  report.inequality.rhs = report.multiplicity - report.hilbert_kunz;
  report.inequality.slack = report.inequality.lhs - report.inequality.rhs;
  report.inequality.verdict =
      detail::gate(report.inequality.slack, report.inequality.numerical, tolerance);
  return report;
}

/// Split additivity: e_1(I^[q], L ⊕ N) = e_1(I^[q], L) + e_1(I^[q], N)
/// exactly at every q = p^1..p^E (lengths of a direct sum add).
template <ColengthProvider B>
AdditivityReport additivity_check(const B& backend, const typename B::Ideal& ideal,
                                  const typename B::Module& left,
                                  const typename B::Module& right, int E,
                                  const FitBudget& budget) {
  if (E < 1) throw InvalidInput("additivity_check: E must be >= 1");
  const int d = backend.dim();
  auto powers = make_power_cache(backend, ideal);
  AdditivityReport report;
  report.all_exact = true;
  std::int64_t q = 1;
  for (int e = 1; e <= E; ++e) {
    q *= backend.characteristic();
    auto sl = bracket_grid_sampler(backend, powers, q, left);
    auto sr = bracket_grid_sampler(backend, powers, q, right);
    auto ssum = make_sampler(
        [sl, sr](int k) { return (*sl)(k) + (*sr)(k); });
    const int dim_l = backend.module_dim(left);
    const int dim_r = backend.module_dim(right);
    HilbertCoefficients fl = fit_hilbert_coefficients(*sl, d, budget, dim_l);
    HilbertCoefficients fr = fit_hilbert_coefficients(*sr, d, budget, dim_r);
    HilbertCoefficients fs =
        fit_hilbert_coefficients(*ssum, d, budget, std::max(dim_l, dim_r));
    AdditivityRow row;
    row.e = e;
    row.q = q;
    row.e1_left = fl.e[1];
    row.e1_right = fr.e[1];
    row.e1_sum = fs.e[1];
    const Rational qd = Rational(pow_int(BigInt(q), d));
    row.left_normalized = Rational(row.e1_left) / qd;
    row.right_normalized = Rational(row.e1_right) / qd;
    row.sum_normalized = Rational(row.e1_sum) / qd;
    row.exact = row.e1_sum == row.e1_left + row.e1_right;
    if (!row.exact) report.all_exact = false;
    report.rows.push_back(std::move(row));
  }
  return report;
}

/// D(e) = max_k |length(R/(I^[q])^k)/(q^d k^(d-1)) - e_HK(I^k)/k^(d-1)|:
/// zero on the exact backend, uniformly O(1/q) in general.
template <ColengthProvider B>
UniformReport uniform_convergence_diagnostic(const B& backend,
                                             const typename B::Ideal& ideal, int E,
                                             int K, int ref_E) {
  if (E < 1 || K < 1)
    throw InvalidInput("uniform_convergence_diagnostic: E and K must be >= 1");
  const int d = backend.dim();
  auto powers = make_power_cache(backend, ideal);
  UniformReport report;
  for (int k = 1; k <= K; ++k)
    report.ehk_references.push_back(ehk_of_power(backend, *powers, k, ref_E));

  std::int64_t q = 1;
  for (int e = 1; e <= E; ++e) {
    q *= backend.characteristic();
    Rational worst = 0;
    const Rational qd = Rational(pow_int(BigInt(q), d));
    for (int k = 1; k <= K; ++k) {
      BigInt len = backend.colength(backend.bracket_power(powers->power(k), q));
      const Rational kd1 = Rational(pow_int(BigInt(k), d - 1));
      Rational dev = abs(Rational(len) / (qd * kd1) -
                         report.ehk_references[k - 1] / kd1);
      if (dev > worst) worst = dev;
    }
    report.rows.push_back({e, q, worst, worst * Rational(q)});
  }
  report.fitted_constant = 0;
  report.nonincreasing = true;
  for (std::size_t j = 0; j < report.rows.size(); ++j) {
    if (report.rows[j].deviation_times_q > report.fitted_constant)
      report.fitted_constant = report.rows[j].deviation_times_q;
    if (j > 0 && report.rows[j].deviation > report.rows[j - 1].deviation)
      report.nonincreasing = false;
  }
  report.ok = report.nonincreasing;
  return report;
}

/// length(M/(I^[q])^k M) < B mu^(dim M) (qk)^(dim M) over the whole grid,
/// with B fitted from the Hilbert-Samuel function of M. corrupt_factor is a
/// test hook multiplying the grid lengths (the failure path).
template <ColengthProvider B>
BoundReport bound_diagnostic(const B& backend, const typename B::Ideal& ideal,
                             const typename B::Module& module, int E, int K,
                             const FitBudget& budget, int corrupt_factor = 1) {
  if (E < 1 || K < 1 || corrupt_factor < 1)
    throw InvalidInput("bound_diagnostic: E, K and the hook factor must be >= 1");
  BoundReport report;
  report.mu = ideal.num_gens();
  report.module_dim = backend.module_dim(module);
  const int m = report.module_dim;

  HilbertCoefficients fit = fit_ideal_coefficients(backend, ideal, module, budget);
  auto powers = make_power_cache(backend, ideal);
  // sup of length(M/I^n M)/n^m: scan the samples and the polynomial range,
  // then take the asymptote e_lead/m! into the max as well
  Rational sup = 0;
  for (int n = 1; n <= budget.k_max; ++n) {
    Rational ratio = Rational(backend.module_colength(powers->power(n), module)) /
                     Rational(pow_int(BigInt(n), m));
    if (ratio > sup) sup = ratio;
  }
  for (int n = budget.k_max + 1; n <= 256; ++n) {
    Rational ratio =
        Rational(evaluate_binomial_poly(fit, n)) / Rational(pow_int(BigInt(n), m));
    if (ratio > sup) sup = ratio;
  }
  {
    BigInt fact = 1;
    for (int i = 2; i <= m; ++i) fact *= i;
    Rational asymptote = Rational(fit.e[backend.dim() - m]) / Rational(fact);
    if (asymptote > sup) sup = asymptote;
  }
  report.fitted_B = sup;
  report.constant_C = sup * Rational(pow_int(BigInt(report.mu), m));

  report.all_ok = true;
  std::int64_t q = 1;
  for (int e = 1; e <= E; ++e) {
    q *= backend.characteristic();
    for (int k = 1; k <= K; ++k) {
      BoundRow row;
      row.e = e;
      row.q = q;
      row.k = k;
      row.length =
          backend.module_colength(backend.bracket_power(powers->power(k), q), module) *
          corrupt_factor;
      row.bound = report.constant_C * Rational(pow_int(BigInt(q * k), m));
      row.ok = Rational(row.length) < row.bound;
      if (!row.ok) report.all_ok = false;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace hk
