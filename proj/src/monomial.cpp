#include "hk/monomial.hpp"

#include <algorithm>
#include <string>

namespace hk {

bool divides(const ExponentVec& a, const ExponentVec& b) {
  if (a.size() != b.size())
    throw DimensionMismatch("divides: exponent vectors of different lengths");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

ExponentVec exponent_sum(const ExponentVec& a, const ExponentVec& b) {
  if (a.size() != b.size())
    throw DimensionMismatch("exponent_sum: exponent vectors of different lengths");
  ExponentVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

ExponentVec exponent_join(const ExponentVec& a, const ExponentVec& b) {
  if (a.size() != b.size())
    throw DimensionMismatch("exponent_join: exponent vectors of different lengths");
  ExponentVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

RegularRing::RegularRing(int d, std::int64_t p) : d(d), p(p) {
  if (d < 1) throw InvalidInput("RegularRing: dimension must be >= 1");
  if (!is_prime(p)) throw InvalidInput("RegularRing: characteristic must be prime");
}

std::vector<ExponentVec> minimalize(std::vector<ExponentVec> gens) {
  if (gens.empty()) return gens;
  const std::size_t d = gens.front().size();
  for (const auto& g : gens)
    if (g.size() != d)
      throw DimensionMismatch("minimalize: mixed exponent vector lengths");
  // process by total degree: any proper dominator of g has smaller degree,
  // so checking g against the kept antichain alone is enough
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::stable_sort(gens.begin(), gens.end(),
                   [](const ExponentVec& a, const ExponentVec& b) {
                     std::int64_t da = 0, db = 0;
                     for (auto e : a) da += e;
                     for (auto e : b) db += e;
                     return da < db;
                   });
  std::vector<ExponentVec> keep;
  keep.reserve(gens.size());
  for (auto& g : gens) {
    bool dominated = false;
    for (const auto& h : keep)
      if (divides(h, g)) {
        dominated = true;
        break;
      }
    if (!dominated) keep.push_back(std::move(g));
  }
  std::sort(keep.begin(), keep.end());
  return keep;
}

MonomialIdeal::MonomialIdeal(RegularRing ring, std::vector<ExponentVec> gens)
    : ring_(ring), gens_(minimalize(std::move(gens))) {
  if (gens_.empty())
    throw InvalidInput("MonomialIdeal: empty generating set (zero ideal is not representable)");
  for (const auto& g : gens_) {
    if (static_cast<int>(g.size()) != ring_.d)
      throw DimensionMismatch("MonomialIdeal: generator length differs from ring dimension");
    bool zero = true;
    for (auto e : g) {
      if (e < 0) throw InvalidInput("MonomialIdeal: negative exponent");
      if (e > 0) zero = false;
    }
    if (zero)
      throw InvalidInput("MonomialIdeal: unit ideal is not representable (zero generator)");
  }
}

MonomialIdeal multiply(const MonomialIdeal& a, const MonomialIdeal& b) {
  if (!(a.ring() == b.ring()))
    throw RingMismatch("multiply: ideals live in different rings");
  std::vector<ExponentVec> sums;
  sums.reserve(a.gens().size() * b.gens().size());
  for (const auto& g : a.gens())
    for (const auto& h : b.gens()) sums.push_back(exponent_sum(g, h));
  return MonomialIdeal(a.ring(), std::move(sums));
}

MonomialIdeal power(const MonomialIdeal& ideal, int k) {
  if (k < 1)
    throw InvalidInput("power: exponent must be >= 1 (the unit ideal is not representable)");
  MonomialIdeal acc = ideal;
  for (int i = 1; i < k; ++i) acc = multiply(acc, ideal);
  return acc;
}

MonomialIdeal bracket_power(const MonomialIdeal& ideal, std::int64_t q) {
  if (!is_power_of(q, ideal.ring().p))
    throw InvalidInput("bracket_power: q = " + std::to_string(q) +
                       " is not a power of the characteristic " +
                       std::to_string(ideal.ring().p));
  std::vector<ExponentVec> gens = ideal.gens();
  for (auto& g : gens)
    for (auto& e : g) e *= q;
  return MonomialIdeal(ideal.ring(), std::move(gens));
}

bool contains(const MonomialIdeal& outer, const MonomialIdeal& inner) {
  if (!(outer.ring() == inner.ring()))
    throw RingMismatch("contains: ideals live in different rings");
  for (const auto& g : inner.gens()) {
    bool in = false;
    for (const auto& h : outer.gens())
      if (divides(h, g)) {
        in = true;
        break;
      }
    if (!in) return false;
  }
  return true;
}

bool is_m_primary(const MonomialIdeal& ideal) {
  const int d = ideal.ring().d;
  for (int i = 0; i < d; ++i) {
    bool capped = false;
    for (const auto& g : ideal.gens()) {
      bool pure = g[i] > 0;
      for (int j = 0; pure && j < d; ++j)
        if (j != i && g[j] != 0) pure = false;
      if (pure) {
        capped = true;
        break;
      }
    }
    if (!capped) return false;
  }
  return true;
}

std::int64_t ord(const MonomialIdeal& ideal) {
  std::int64_t best = -1;
  for (const auto& g : ideal.gens()) {
    std::int64_t sum = 0;
    for (auto e : g) sum += e;
    if (best < 0 || sum < best) best = sum;
  }
  return best;
}

std::vector<std::int64_t> pure_power_bounds(const MonomialIdeal& ideal) {
  const int d = ideal.ring().d;
  std::vector<std::int64_t> bounds(d, -1);
  for (const auto& g : ideal.gens()) {
    int support = -1;
    bool pure = true;
    for (int j = 0; j < d; ++j) {
      if (g[j] == 0) continue;
      if (support >= 0) {
        pure = false;
        break;
      }
      support = j;
    }
    if (pure && support >= 0) bounds[support] = g[support];
  }
  for (int i = 0; i < d; ++i)
    if (bounds[i] < 0)
      throw InfiniteLength(
          "quotient has infinite length: no pure power in coordinate x_" +
              std::to_string(i + 1),
          i);
  return bounds;
}

ModuleSpec ModuleSpec::quotient(MonomialIdeal annihilator) {
  RegularRing ring = annihilator.ring();
  return {ring, std::move(annihilator)};
}

int ModuleSpec::dim() const {
  if (!annihilator) return ring.d;
  const auto& gens = annihilator->gens();
  const int d = ring.d;
  // height(A) = smallest set of coordinates meeting every generator support
  for (int size = 0; size <= d; ++size) {
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
      if (__builtin_popcount(mask) != size) continue;
      bool hits_all = true;
      for (const auto& g : gens) {
        bool hit = false;
        for (int j = 0; j < d && !hit; ++j)
          if ((mask >> j & 1u) && g[j] > 0) hit = true;
        if (!hit) {
          hits_all = false;
          break;
        }
      }
      if (hits_all) return d - size;
    }
  }
  return 0;  // unreachable: mask = all coordinates always hits
}

}  // namespace hk
