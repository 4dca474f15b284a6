#include "hk/numeric.hpp"

#include <stdexcept>

namespace hk {

BigInt binomial(const BigInt& n, int k) {
  if (k < 0) return 0;
  if (n < 0) throw std::invalid_argument("binomial: negative upper index");
  if (n < k) return 0;
  BigInt num = 1;
  BigInt den = 1;
  for (int i = 1; i <= k; ++i) {
    num *= n + 1 - i;
    den *= i;
  }
  return num / den;  // exact: den | num
}

BigInt pow_int(const BigInt& x, int e) {
  if (e < 0) throw std::invalid_argument("pow_int: negative exponent");
  BigInt acc = 1;
  BigInt base = x;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

bool is_power_of(std::int64_t q, std::int64_t p) {
  if (q < 1 || p < 2) return false;
  while (q % p == 0) q /= p;
  return q == 1;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t f = 3; f * f <= n; f += 2)
    if (n % f == 0) return false;
  return true;
}

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace hk
