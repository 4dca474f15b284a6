#include "hk/colength.hpp"

#include <algorithm>
#include <cstddef>
#include <unordered_map>
#include <vector>

namespace hk {

namespace {

void require_m_primary(const MonomialIdeal& ideal) {
  // pure_power_bounds throws InfiniteLength naming the open direction
  (void)pure_power_bounds(ideal);
}

BigInt ie_subsets(const std::vector<ExponentVec>& gens,
                  const std::vector<std::int64_t>& bounds, std::size_t next,
                  ExponentVec join, int sign) {
  BigInt total = 0;
  {
    BigInt box = 1;
    for (std::size_t i = 0; i < bounds.size(); ++i) {
      const std::int64_t side = bounds[i] - join[i];
      if (side <= 0) {
        box = 0;
        break;
      }
      box *= side;
    }
    total += sign > 0 ? box : -box;
  }
  for (std::size_t g = next; g < gens.size(); ++g) {
    ExponentVec j = exponent_join(join, gens[g]);
    // joins only grow, so a subset whose box already vanished stays vanished
    bool dead = false;
    for (std::size_t i = 0; i < bounds.size(); ++i)
      if (j[i] >= bounds[i]) {
        dead = true;
        break;
      }
    if (dead) continue;
    total += ie_subsets(gens, bounds, g + 1, std::move(j), -sign);
  }
  return total;
}

struct GensHash {
  std::size_t operator()(const std::vector<ExponentVec>& gens) const {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    mix(gens.size());
    for (const auto& g : gens)
      for (auto e : g) mix(static_cast<std::uint64_t>(e));
    return h;
  }
};

using Memo = std::unordered_map<std::vector<ExponentVec>, BigInt, GensHash>;

// gens: minimal antichain of an m-primary ideal (every coordinate capped).
BigInt dc_count(std::vector<ExponentVec> gens, Memo& memo) {
  const int d = static_cast<int>(gens.front().size());

  // unit ideal: nothing outside
  for (const auto& g : gens) {
    bool zero = true;
    for (auto e : g)
      if (e != 0) {
        zero = false;
        break;
      }
    if (zero) return 0;
  }

  // pick a pivot coordinate with mixed-support generators; none means the
  // ideal is the box of its pure powers
  std::vector<std::int64_t> bounds(d, 0);
  int pivot_coord = -1;
  std::size_t pivot_values = 0;
  for (int i = 0; i < d; ++i) {
    std::vector<std::int64_t> values;
    for (const auto& g : gens) {
      int support = 0;
      for (auto e : g)
        if (e > 0) ++support;
      if (support == 1 && g[i] > 0)
        bounds[i] = g[i];
      else if (support > 1 && g[i] > 0)
        values.push_back(g[i]);
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.size() > pivot_values) {
      pivot_values = values.size();
      pivot_coord = i;
    }
  }
  if (pivot_coord < 0) {
    BigInt box = 1;
    for (int i = 0; i < d; ++i) {
      if (bounds[i] <= 0)
        throw InternalConsistency(
            "colength recursion lost the pure power in coordinate " +
            std::to_string(i + 1));
      box *= bounds[i];
    }
    return box;
  }

  auto it = memo.find(gens);
  if (it != memo.end()) return it->second;

  std::vector<std::int64_t> values;
  for (const auto& g : gens) {
    int support = 0;
    for (auto e : g)
      if (e > 0) ++support;
    if (support > 1 && g[pivot_coord] > 0) values.push_back(g[pivot_coord]);
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  const std::int64_t t = values[values.size() / 2];  // median exponent

  // slab below: v_i < t, i.e. the ideal plus the pure power x_i^t
  std::vector<ExponentVec> below = gens;
  {
    ExponentVec pure(d, 0);
    pure[pivot_coord] = t;
    below.push_back(std::move(pure));
  }
  // slab above: v_i >= t shifted down, i.e. the colon by x_i^t
  std::vector<ExponentVec> above = gens;
  for (auto& g : above) g[pivot_coord] = std::max<std::int64_t>(0, g[pivot_coord] - t);

  BigInt result = dc_count(minimalize(std::move(below)), memo) +
                  dc_count(minimalize(std::move(above)), memo);
  memo.emplace(std::move(gens), result);
  return result;
}

}  // namespace

BigInt colength_ie(const MonomialIdeal& ideal) {
  require_m_primary(ideal);
  if (ideal.num_gens() > 20)
    throw BudgetExceeded("colength_ie: more than 20 generators (oracle cap)",
                         ideal.num_gens());
  const auto bounds = pure_power_bounds(ideal);
  return ie_subsets(ideal.gens(), bounds, 0,
                    ExponentVec(ideal.ring().d, 0), +1);
}

BigInt colength_dc(const MonomialIdeal& ideal) {
  require_m_primary(ideal);
  Memo memo;
  return dc_count(ideal.gens(), memo);
}

BigInt colength(const MonomialIdeal& ideal, const ColengthOptions& opt) {
  BigInt fast = colength_dc(ideal);
  if (opt.cross_check && ideal.num_gens() <= 20) {
    BigInt oracle = colength_ie(ideal);
    if (oracle != fast)
      throw InternalConsistency(
          "colength cross-check failed: divide-and-conquer " + fast.str() +
          " vs inclusion-exclusion " + oracle.str());
  }
  return fast;
}

MonomialIdeal ideal_sum(const MonomialIdeal& a, const MonomialIdeal& b) {
  if (!(a.ring() == b.ring()))
    throw RingMismatch("ideal_sum: ideals live in different rings");
  std::vector<ExponentVec> gens = a.gens();
  gens.insert(gens.end(), b.gens().begin(), b.gens().end());
  return MonomialIdeal(a.ring(), std::move(gens));
}

BigInt module_colength(const MonomialIdeal& ideal, const ModuleSpec& module,
                       const ColengthOptions& opt) {
  if (!(ideal.ring() == module.ring))
    throw RingMismatch("module_colength: ideal and module rings differ");
  if (!module.annihilator) return colength(ideal, opt);
  return colength(ideal_sum(ideal, *module.annihilator), opt);
}

}  // namespace hk
