#pragma once

#include <string>

#include "json.hpp"

#include "hk/hilbert.hpp"
#include "hk/invariants.hpp"
#include "hk/monomial.hpp"
#include "hk/toric.hpp"

namespace hk::io {

using nlohmann::json;

/// "3" or "3/2" -> exact rational; rejects anything else.
Rational parse_rational(const std::string& text);

/// Exact values in JSON: plain integers while they fit, strings beyond.
json to_json(const BigInt& value);
json to_json(const Rational& value);

json to_json(const RegularRing& ring);
json to_json(const ToricRing2& ring);
json to_json(const MonomialIdeal& ideal);
json to_json(const SemigroupIdeal& ideal);

json to_json(const HilbertCoefficients& coeffs);
json to_json(const LimitEstimate& estimate);
json to_json(const InequalityReport& report);
json to_json(const DecomposeReport& report);
json to_json(const AdditivityReport& report);
json to_json(const UniformReport& report);
json to_json(const BoundReport& report);
json to_json(const NorthcottReport& report);

RegularRing regular_ring_from_json(const json& spec);
ToricRing2 toric_ring_from_json(const json& spec, const ToricOptions& options);
std::vector<ExponentVec> gens_from_json(const json& gens);

/// Throws ParseError when the object carries keys outside `allowed`.
void reject_unknown_fields(const json& object, const std::vector<std::string>& allowed,
                           const std::string& where);

/// Minimal CSV quoting: wrap fields containing separators or quotes.
std::string csv_field(const std::string& value);

}  // namespace hk::io
