#include "hk/toric.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace hk {

namespace {

std::int64_t cross(const Point2& a, const Point2& b) {
  return a[0] * b[1] - a[1] * b[0];
}

Point2 sub(const Point2& a, const Point2& b) { return {a[0] - b[0], a[1] - b[1]}; }
Point2 add(const Point2& a, const Point2& b) { return {a[0] + b[0], a[1] + b[1]}; }
Point2 scale(const Point2& a, std::int64_t t) { return {t * a[0], t * a[1]}; }

std::int64_t pos_mod(std::int64_t a, std::int64_t b) {
  std::int64_t r = a % b;
  return r < 0 ? r + b : r;
}

}  // namespace

Lattice2 Lattice2::from_generators(const std::vector<Point2>& gens) {
  // rows (a, b) and (0, c); fold each generator in, keeping Hermite form
  std::int64_t a = 0, b = 0, c = 0;
  auto fold_second = [&c](std::int64_t y) { c = std::gcd(c, y < 0 ? -y : y); };
  for (const auto& v : gens) {
    std::int64_t x = v[0], y = v[1];
    if (x == 0) {
      fold_second(y);
      continue;
    }
    if (a == 0) {
      a = x < 0 ? -x : x;
      b = x < 0 ? -y : y;
      continue;
    }
    // extended gcd combination of the two leading rows
    std::int64_t old_a = a, old_b = b;
    std::int64_t g = old_a, s = 1, t = 0, x1 = x, s1 = 0, t1 = 1;
    while (x1 != 0) {
      std::int64_t q = g / x1;
      g -= q * x1;
      s -= q * s1;
      t -= q * t1;
      std::swap(g, x1);
      std::swap(s, s1);
      std::swap(t, t1);
    }
    if (g < 0) {
      g = -g;
      s = -s;
      t = -t;
    }
    std::int64_t nb = s * old_b + t * y;
    fold_second(old_b - (old_a / g) * nb);
    fold_second(y - (x / g) * nb);
    a = g;
    b = nb;
  }
  if (a <= 0 || c <= 0)
    throw InvalidInput("Lattice2: generators do not span a finite-index sublattice");
  b = pos_mod(b, c);
  return Lattice2(a, b, c);
}

Lattice2 Lattice2::from_congruence(std::int64_t alpha, std::int64_t beta,
                                   std::int64_t modulus) {
  if (modulus < 1) throw InvalidInput("Lattice2: congruence modulus must be >= 1");
  if (modulus > 4096)
    throw InvalidInput("Lattice2: congruence modulus too large; give a basis instead");
  std::vector<Point2> gens = {{modulus, 0}, {0, modulus}};
  for (std::int64_t x = 0; x < modulus; ++x)
    for (std::int64_t y = 0; y < modulus; ++y)
      if (pos_mod(alpha * x + beta * y, modulus) == 0 && (x != 0 || y != 0))
        gens.push_back({x, y});
  return from_generators(gens);
}

bool Lattice2::contains(const Point2& v) const {
  if (v[0] % a_ != 0) return false;
  return (v[1] - (v[0] / a_) * b_) % c_ == 0;
}

ToricRing2::ToricRing2(Point2 ray1, Point2 ray2, Lattice2 lattice, std::int64_t p,
                       ToricOptions options)
    : ray1_(ray1), ray2_(ray2), lattice_(std::move(lattice)), p_(p),
      options_(options) {
  auto primitive = [](const Point2& r) {
    return std::gcd(r[0] < 0 ? -r[0] : r[0], r[1] < 0 ? -r[1] : r[1]) == 1;
  };
  if (!primitive(ray1_) || !primitive(ray2_))
    throw InvalidInput("ToricRing2: rays must be primitive integer vectors");
  if (cross(ray1_, ray2_) == 0)
    throw InvalidInput("ToricRing2: rays must be linearly independent");
  if (!is_prime(p_)) throw InvalidInput("ToricRing2: characteristic must be prime");
  if (options_.cert_bound < 1 || options_.enumeration_cap < 1)
    throw InvalidInput("ToricRing2: budgets must be positive");
}

bool ToricRing2::in_cone(const Point2& v) const {
  const std::int64_t det = cross(ray1_, ray2_);
  const std::int64_t c1 = cross(v, ray2_);  // det * alpha_1
  const std::int64_t c2 = cross(ray1_, v);  // det * alpha_2
  if (det > 0) return c1 >= 0 && c2 >= 0;
  return c1 <= 0 && c2 <= 0;
}

bool semigroup_member(const ToricRing2& ring, const Point2& v) {
  return ring.in_cone(v) && ring.lattice().contains(v);
}

namespace {

std::vector<Point2> toric_minimalize(const ToricRing2& ring, std::vector<Point2> gens) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<Point2> keep;
  for (const auto& g : gens) {
    bool dominated = false;
    for (const auto& h : gens) {
      if (h == g) continue;
      if (semigroup_member(ring, sub(g, h))) {
        dominated = true;
        break;
      }
    }
    if (!dominated) keep.push_back(g);
  }
  return keep;
}

}  // namespace

SemigroupIdeal::SemigroupIdeal(ToricRing2 ring, std::vector<Point2> gens)
    : ring_(std::move(ring)), gens_(toric_minimalize(ring_, std::move(gens))) {
  if (gens_.empty())
    throw InvalidInput("SemigroupIdeal: empty generating set");
  for (const auto& g : gens_) {
    if (!semigroup_member(ring_, g))
      throw InvalidInput("SemigroupIdeal: generator (" + std::to_string(g[0]) + "," +
                         std::to_string(g[1]) + ") is not a semigroup element");
    if (g[0] == 0 && g[1] == 0)
      throw InvalidInput("SemigroupIdeal: unit ideal is not representable");
  }
}

bool ideal_member(const SemigroupIdeal& ideal, const Point2& v) {
  for (const auto& g : ideal.gens())
    if (semigroup_member(ideal.ring(), sub(v, g))) return true;
  return false;
}

SemigroupIdeal toric_multiply(const SemigroupIdeal& a, const SemigroupIdeal& b) {
  if (!(a.ring() == b.ring()))
    throw RingMismatch("toric_multiply: ideals live in different rings");
  std::vector<Point2> sums;
  sums.reserve(a.gens().size() * b.gens().size());
  for (const auto& g : a.gens())
    for (const auto& h : b.gens()) sums.push_back(add(g, h));
  return SemigroupIdeal(a.ring(), std::move(sums));
}

SemigroupIdeal toric_power(const SemigroupIdeal& ideal, int k) {
  if (k < 1) throw InvalidInput("toric_power: exponent must be >= 1");
  SemigroupIdeal acc = ideal;
  for (int i = 1; i < k; ++i) acc = toric_multiply(acc, ideal);
  return acc;
}

SemigroupIdeal toric_bracket(const SemigroupIdeal& ideal, std::int64_t q) {
  if (!is_power_of(q, ideal.ring().p()))
    throw InvalidInput("toric_bracket: q = " + std::to_string(q) +
                       " is not a power of the characteristic");
  std::vector<Point2> gens = ideal.gens();
  for (auto& g : gens) g = scale(g, q);
  return SemigroupIdeal(ideal.ring(), std::move(gens));
}

BigInt toric_colength(const SemigroupIdeal& ideal) {
  const ToricRing2& ring = ideal.ring();

  // certification cap scales with the generators: bracket-power grids need
  // ray multiples proportional to the generator size
  std::int64_t max_sum = 0;
  for (const auto& g : ideal.gens()) {
    std::int64_t s = (g[0] < 0 ? -g[0] : g[0]) + (g[1] < 0 ? -g[1] : g[1]);
    max_sum = std::max(max_sum, s);
  }
  const std::int64_t cap =
      std::max(ring.options().cert_bound, 8 * ring.lattice().index() * max_sum + 8);

  std::int64_t mult[2] = {0, 0};
  for (int i = 0; i < 2; ++i) {
    for (std::int64_t n = 1; n <= cap; ++n) {
      if (ideal_member(ideal, scale(ring.ray(i), n))) {
        mult[i] = n;
        break;
      }
    }
    if (mult[i] == 0)
      throw CannotCertify(
          "cannot certify m-primarity: no multiple of ray " + std::to_string(i + 1) +
          " up to " + std::to_string(cap) + " lies in the ideal");
  }

  // every S-point outside the ideal lies in the parallelogram spanned by
  // mult[i] * ray_i; enumerate its bounding box
  const Point2 c1 = scale(ring.ray(0), mult[0]);
  const Point2 c2 = scale(ring.ray(1), mult[1]);
  const Point2 c3 = add(c1, c2);
  const std::int64_t xlo = std::min<std::int64_t>({0, c1[0], c2[0], c3[0]});
  const std::int64_t xhi = std::max<std::int64_t>({0, c1[0], c2[0], c3[0]});
  const std::int64_t ylo = std::min<std::int64_t>({0, c1[1], c2[1], c3[1]});
  const std::int64_t yhi = std::max<std::int64_t>({0, c1[1], c2[1], c3[1]});

  const BigInt box = BigInt(xhi - xlo + 1) * BigInt(yhi - ylo + 1);
  if (box > ring.options().enumeration_cap)
    throw BudgetExceeded("toric enumeration box of " + box.str() +
                         " points exceeds the cap of " +
                         std::to_string(ring.options().enumeration_cap));

  BigInt count = 0;
  for (std::int64_t x = xlo; x <= xhi; ++x)
    for (std::int64_t y = ylo; y <= yhi; ++y) {
      const Point2 v{x, y};
      if (!semigroup_member(ring, v)) continue;
      if (!ideal_member(ideal, v)) ++count;
    }
  return count;
}

SemigroupIdeal maximal_ideal(const ToricRing2& ring) {
  // irreducible elements lie in the parallelogram spanned by the smallest
  // ray multiples t_i * r_i that land in the lattice (Gordan's argument)
  std::int64_t t[2] = {0, 0};
  for (int i = 0; i < 2; ++i) {
    for (std::int64_t n = 1; n <= ring.lattice().index() + 1; ++n)
      if (ring.lattice().contains(scale(ring.ray(i), n))) {
        t[i] = n;
        break;
      }
    if (t[i] == 0)
      throw InternalConsistency("maximal_ideal: no ray multiple lies in the lattice");
  }
  const Point2 c1 = scale(ring.ray(0), t[0]);
  const Point2 c2 = scale(ring.ray(1), t[1]);
  const Point2 c3 = add(c1, c2);
  const std::int64_t xlo = std::min<std::int64_t>({0, c1[0], c2[0], c3[0]});
  const std::int64_t xhi = std::max<std::int64_t>({0, c1[0], c2[0], c3[0]});
  const std::int64_t ylo = std::min<std::int64_t>({0, c1[1], c2[1], c3[1]});
  const std::int64_t yhi = std::max<std::int64_t>({0, c1[1], c2[1], c3[1]});
  std::vector<Point2> gens;
  for (std::int64_t x = xlo; x <= xhi; ++x)
    for (std::int64_t y = ylo; y <= yhi; ++y) {
      const Point2 v{x, y};
      if ((x != 0 || y != 0) && semigroup_member(ring, v)) gens.push_back(v);
    }
  return SemigroupIdeal(ring, std::move(gens));
}

std::int64_t toric_ord(const SemigroupIdeal& ideal) {
  const SemigroupIdeal m = maximal_ideal(ideal.ring());
  std::int64_t max_sum = 0;
  for (const auto& g : ideal.gens()) max_sum = std::max(max_sum, g[0] + g[1]);
  SemigroupIdeal mn = m;
  for (std::int64_t n = 1; n <= max_sum; ++n) {
    bool inside = true;
    for (const auto& g : ideal.gens())
      if (!ideal_member(mn, g)) {
        inside = false;
        break;
      }
    if (!inside) return n - 1;
    mn = toric_multiply(mn, m);
  }
  return max_sum;  // every generator degree caps the order
}

ToricRing2 a1_ring(std::int64_t p, ToricOptions options) {
  return ToricRing2({1, 0}, {0, 1}, Lattice2::from_congruence(1, 1, 2), p, options);
}

}  // namespace hk
