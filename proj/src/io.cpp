#include "hk/io.hpp"

#include <limits>

namespace hk::io {

namespace {

bool fits_int64(const BigInt& v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t int_field(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw ParseError(where + ": missing or non-integer field '" + key + "'");
  return j[key].get<std::int64_t>();
}

Point2 point_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
      !j[1].is_number_integer())
    throw ParseError(where + ": expected an integer pair");
  return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw ParseError("rational with zero denominator: " + text);
    return Rational(num, den);
  } catch (const std::exception&) {
    throw ParseError("not an exact rational: '" + text + "'");
  }
}

json to_json(const BigInt& value) {
  if (fits_int64(value)) return value.convert_to<std::int64_t>();
  return value.str();
}

json to_json(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return to_json(num);
  return hk::to_string(value);
}

json to_json(const RegularRing& ring) {
  return {{"kind", "regular"}, {"d", ring.d}, {"p", ring.p}};
}

json to_json(const ToricRing2& ring) {
  auto basis = ring.lattice().basis();
  return {{"kind", "toric2"},
          {"rays", json::array({json::array({ring.ray(0)[0], ring.ray(0)[1]}),
                                json::array({ring.ray(1)[0], ring.ray(1)[1]})})},
          {"lattice", json::array({json::array({basis[0][0], basis[0][1]}),
                                   json::array({basis[1][0], basis[1][1]})})},
          {"p", ring.p()}};
}

json to_json(const MonomialIdeal& ideal) {
  json gens = json::array();
  for (const auto& g : ideal.gens()) gens.push_back(g);
  return {{"ring", to_json(ideal.ring())}, {"gens", gens}};
}

json to_json(const SemigroupIdeal& ideal) {
  json gens = json::array();
  for (const auto& g : ideal.gens()) gens.push_back(json::array({g[0], g[1]}));
  return {{"ring", to_json(ideal.ring())}, {"gens", gens}};
}

json to_json(const HilbertCoefficients& coeffs) {
  json e = json::array();
  for (const auto& c : coeffs.e) e.push_back(to_json(c));
  return {{"d", coeffs.d},
          {"e", e},
          {"postulation", coeffs.postulation},
          {"verified_through", coeffs.verified_through}};
}

json to_json(const LimitEstimate& estimate) {
  json terms = json::array();
  for (const auto& t : estimate.terms)
    terms.push_back({{"e", t.e}, {"q", t.q}, {"value", to_json(t.value)}});
  return {{"terms", terms},
          {"extrapolated", to_json(estimate.extrapolated)},
          {"method", estimate.method},
          {"error_model", estimate.error_model},
          {"error_constant", to_json(estimate.error_constant)}};
}

json to_json(const InequalityReport& report) {
  return {{"name", report.name},
          {"lhs", to_json(report.lhs)},
          {"rhs", to_json(report.rhs)},
          {"slack", to_json(report.slack)},
          {"verdict", to_string(report.verdict)},
          {"numerical", report.numerical}};
}

json to_json(const DecomposeReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    json r = {{"k", row.k},
              {"ehk_power", to_json(row.ehk_power)},
              {"residual", to_json(row.residual)},
              {"residual_normalized", to_json(row.residual_normalized)},
              {"in_tail_check", row.in_tail_check}};
    if (row.exact_tail) {
      r["exact_tail"] = to_json(*row.exact_tail);
      r["tail_match"] = row.tail_match;
    }
    rows.push_back(std::move(r));
  }
  return {{"base_fit", to_json(report.base_fit)},
          {"multiplicity", to_json(report.multiplicity)},
          {"beta", to_json(report.beta)},
          {"rows", rows},
          {"exact_model", report.exact_model},
          {"ok", report.ok}};
}

json to_json(const AdditivityReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows)
    rows.push_back({{"e", row.e},
                    {"q", row.q},
                    {"e1_left", to_json(row.e1_left)},
                    {"e1_right", to_json(row.e1_right)},
                    {"e1_sum", to_json(row.e1_sum)},
                    {"left_over_qd", to_json(row.left_normalized)},
                    {"right_over_qd", to_json(row.right_normalized)},
                    {"sum_over_qd", to_json(row.sum_normalized)},
                    {"exact", row.exact}});
  return {{"rows", rows}, {"all_exact", report.all_exact}};
}

json to_json(const UniformReport& report) {
  json refs = json::array();
  for (const auto& r : report.ehk_references) refs.push_back(to_json(r));
  json rows = json::array();
  for (const auto& row : report.rows)
    rows.push_back({{"e", row.e},
                    {"q", row.q},
                    {"deviation", to_json(row.deviation)},
                    {"deviation_times_q", to_json(row.deviation_times_q)}});
  return {{"ehk_references", refs},
          {"rows", rows},
          {"fitted_constant", to_json(report.fitted_constant)},
          {"nonincreasing", report.nonincreasing},
          {"ok", report.ok}};
}

json to_json(const BoundReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows)
    rows.push_back({{"e", row.e},
                    {"q", row.q},
                    {"k", row.k},
                    {"length", to_json(row.length)},
                    {"bound", to_json(row.bound)},
                    {"ok", row.ok}});
  return {{"fitted_B", to_json(report.fitted_B)},
          {"constant_C", to_json(report.constant_C)},
          {"mu", report.mu},
          {"module_dim", report.module_dim},
          {"rows", rows},
          {"all_ok", report.all_ok}};
}

json to_json(const NorthcottReport& report) {
  json j = {{"inequality", to_json(report.inequality)},
            {"beta", to_json(report.beta)},
            {"multiplicity", to_json(report.multiplicity)},
            {"hilbert_kunz", to_json(report.hilbert_kunz)}};
  if (report.elias_reported) j["elias_reported_upper"] = to_json(*report.elias_reported);
  return j;
}

RegularRing regular_ring_from_json(const json& spec) {
  reject_unknown_fields(spec, {"kind", "d", "p"}, "ring");
  return RegularRing(static_cast<int>(int_field(spec, "d", "ring")),
                     int_field(spec, "p", "ring"));
}

ToricRing2 toric_ring_from_json(const json& spec, const ToricOptions& options) {
  reject_unknown_fields(spec, {"kind", "rays", "lattice", "congruence", "p"}, "ring");
  if (!spec.contains("rays") || !spec["rays"].is_array() || spec["rays"].size() != 2)
    throw ParseError("toric ring: 'rays' must list two integer pairs");
  Point2 r1 = point_from_json(spec["rays"][0], "rays");
  Point2 r2 = point_from_json(spec["rays"][1], "rays");
  std::optional<Lattice2> lattice;
  if (spec.contains("lattice")) {
    if (spec.contains("congruence"))
      throw ParseError("toric ring: give either 'lattice' or 'congruence', not both");
    if (!spec["lattice"].is_array() || spec["lattice"].empty())
      throw ParseError("toric ring: 'lattice' must list generating integer pairs");
    std::vector<Point2> gens;
    for (const auto& g : spec["lattice"]) gens.push_back(point_from_json(g, "lattice"));
    lattice = Lattice2::from_generators(gens);
  } else if (spec.contains("congruence")) {
    const json& c = spec["congruence"];
    reject_unknown_fields(c, {"coeffs", "modulus"}, "congruence");
    if (!c.contains("coeffs") || !c["coeffs"].is_array() || c["coeffs"].size() != 2)
      throw ParseError("congruence: 'coeffs' must be an integer pair");
    Point2 coeffs = point_from_json(c["coeffs"], "congruence");
    lattice = Lattice2::from_congruence(coeffs[0], coeffs[1],
                                        int_field(c, "modulus", "congruence"));
  } else {
    throw ParseError("toric ring: missing 'lattice' (or 'congruence')");
  }
  return ToricRing2(r1, r2, *lattice, int_field(spec, "p", "ring"), options);
}

std::vector<ExponentVec> gens_from_json(const json& gens) {
  if (!gens.is_array() || gens.empty())
    throw ParseError("ideal: 'gens' must be a nonempty array of exponent vectors");
  std::vector<ExponentVec> out;
  for (const auto& g : gens) {
    if (!g.is_array()) throw ParseError("ideal: generator is not an array");
    ExponentVec v;
    for (const auto& e : g) {
      if (!e.is_number_integer())
        throw ParseError("ideal: exponents must be JSON integers");
      v.push_back(e.get<std::int64_t>());
    }
    out.push_back(std::move(v));
  }
  return out;
}

void reject_unknown_fields(const json& object, const std::vector<std::string>& allowed,
                           const std::string& where) {
  if (!object.is_object()) throw ParseError(where + ": expected a JSON object");
  for (const auto& item : object.items()) {
    bool known = false;
    for (const auto& k : allowed)
      if (item.key() == k) {
        known = true;
        break;
      }
    if (!known) throw ParseError(where + ": unknown field '" + item.key() + "'");
  }
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace hk::io

