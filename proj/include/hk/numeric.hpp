#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace hk {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Binomial coefficient C(n, k) for k >= 0; zero when n < k (and for k < 0).
/// n may be any BigInt >= 0 at the call sites we have; negative n is rejected.
BigInt binomial(const BigInt& n, int k);

/// x^e for e >= 0.
BigInt pow_int(const BigInt& x, int e);

/// True if q == p^e for some e >= 0 (so q = 1 is accepted).
bool is_power_of(std::int64_t q, std::int64_t p);

/// Deterministic trial-division primality check, adequate for small moduli.
bool is_prime(std::int64_t n);

/// Canonical text form: "3" for integers, "3/2" otherwise.
std::string to_string(const Rational& r);

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace hk
