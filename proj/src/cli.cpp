#include "hk/cli.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>
#include <variant>

#include "CLI11.hpp"

#include "hk/invariants.hpp"
#include "hk/io.hpp"

namespace hk::cli {

namespace {

using io::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

struct Budgets {
  int E = 3;
  int K = 4;
  int k_max = 12;
  int n = 2;  // Watanabe-Yoshida power
  int i = 1;  // Hilbert coefficient index for the limit sequence
  std::int64_t enumeration_cap = 50'000'000;
  std::int64_t cert_bound = 64;
};

struct JobConfig {
  json ring;
  json ideal_gens;
  Budgets budgets;
  std::optional<json> module_json;
  std::optional<json> modules_json;
  std::string format = "csv";
  Rational tolerance = Rational(1, 100);
  bool paranoid = false;
  std::string check;
  std::string output_dir = "sweep-out";
  json families = json::array();
  std::vector<std::string> commands;
  int corrupt_factor = 1;  // test hook for the bound failure path
};

JobConfig parse_config(const json& doc) {
  io::reject_unknown_fields(doc,
                            {"ring", "ideal", "budgets", "module", "modules",
                             "format", "tolerance", "paranoid", "check",
                             "families", "commands", "output_dir"},
                            "config");
  JobConfig cfg;
  if (doc.contains("budgets")) {
    const json& b = doc["budgets"];
    io::reject_unknown_fields(
        b, {"E", "K", "k_max", "n", "i", "enumeration_cap", "cert_bound"}, "budgets");
    auto take = [&b](const char* key, auto& slot) {
      if (b.contains(key)) {
        if (!b[key].is_number_integer() || b[key].template get<std::int64_t>() < 1)
          throw ParseError(std::string("budgets: '") + key +
                           "' must be a positive integer");
        slot = static_cast<std::remove_reference_t<decltype(slot)>>(
            b[key].template get<std::int64_t>());
      }
    };
    take("E", cfg.budgets.E);
    take("K", cfg.budgets.K);
    take("k_max", cfg.budgets.k_max);
    take("n", cfg.budgets.n);
    take("i", cfg.budgets.i);
    take("enumeration_cap", cfg.budgets.enumeration_cap);
    take("cert_bound", cfg.budgets.cert_bound);
  }
  if (doc.contains("ideal")) {
    const json& ideal = doc["ideal"];
    io::reject_unknown_fields(ideal, {"ring", "gens"}, "ideal");
    if (!ideal.contains("gens")) throw ParseError("ideal: missing 'gens'");
    cfg.ideal_gens = ideal["gens"];
    if (ideal.contains("ring")) {
      if (doc.contains("ring") && doc["ring"] != ideal["ring"])
        throw ParseError("config: top-level ring and ideal.ring disagree");
      cfg.ring = ideal["ring"];
    }
  }
  if (doc.contains("ring")) cfg.ring = doc["ring"];
  if (doc.contains("module")) cfg.module_json = doc["module"];
  if (doc.contains("modules")) cfg.modules_json = doc["modules"];
  if (doc.contains("format")) {
    cfg.format = doc["format"].get<std::string>();
    if (cfg.format != "csv" && cfg.format != "json")
      throw ParseError("config: format must be 'csv' or 'json'");
  }
  if (doc.contains("tolerance")) {
    if (doc["tolerance"].is_string())
      cfg.tolerance = io::parse_rational(doc["tolerance"].get<std::string>());
    else if (doc["tolerance"].is_number_integer())
      cfg.tolerance = Rational(doc["tolerance"].get<std::int64_t>());
    else
      throw ParseError("config: tolerance must be an exact rational string");
    if (cfg.tolerance <= 0) throw ParseError("config: tolerance must be positive");
  }
  if (doc.contains("paranoid")) {
    if (!doc["paranoid"].is_boolean())
      throw ParseError("config: paranoid must be a boolean");
    cfg.paranoid = doc["paranoid"].get<bool>();
  }
  if (doc.contains("check")) cfg.check = doc["check"].get<std::string>();
  if (doc.contains("output_dir")) cfg.output_dir = doc["output_dir"].get<std::string>();
  if (doc.contains("families")) cfg.families = doc["families"];
  if (doc.contains("commands")) {
    for (const auto& c : doc["commands"]) cfg.commands.push_back(c.get<std::string>());
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// workspaces: the parsed ring/ideal pair, per backend

struct RegularWork {
  RegularBackend backend;
  MonomialIdeal ideal;
};

struct ToricWork {
  ToricBackend backend;
  SemigroupIdeal ideal;
};

using Work = std::variant<RegularWork, ToricWork>;

std::vector<Point2> points_from_json(const json& gens) {
  std::vector<Point2> out;
  for (const auto& g : gens) {
    if (!g.is_array() || g.size() != 2 || !g[0].is_number_integer() ||
        !g[1].is_number_integer())
      throw ParseError("toric ideal: generators must be integer pairs");
    out.push_back({g[0].get<std::int64_t>(), g[1].get<std::int64_t>()});
  }
  return out;
}

Work load_work(const JobConfig& cfg) {
  if (cfg.ring.is_null()) throw ParseError("config: missing 'ring'");
  if (!cfg.ring.is_object() || !cfg.ring.contains("kind"))
    throw ParseError("ring: missing 'kind'");
  const std::string kind = cfg.ring["kind"].get<std::string>();
  if (cfg.ideal_gens.is_null()) throw ParseError("config: missing 'ideal'");
  if (kind == "regular") {
    RegularRing ring = io::regular_ring_from_json(cfg.ring);
    ColengthOptions opt{.cross_check = cfg.paranoid};
    return RegularWork{RegularBackend(ring, opt),
                       MonomialIdeal(ring, io::gens_from_json(cfg.ideal_gens))};
  }
  if (kind == "toric2") {
    ToricOptions opt;
    opt.cert_bound = cfg.budgets.cert_bound;
    opt.enumeration_cap = cfg.budgets.enumeration_cap;
    ToricRing2 ring = io::toric_ring_from_json(cfg.ring, opt);
    return ToricWork{ToricBackend(ring),
                     SemigroupIdeal(ring, points_from_json(cfg.ideal_gens))};
  }
  throw ParseError("ring: unknown kind '" + kind + "'");
}

ModuleSpec module_from_json(const RegularRing& ring, const json& spec) {
  io::reject_unknown_fields(spec, {"annihilator"}, "module");
  if (!spec.contains("annihilator") || spec["annihilator"].is_null())
    return ModuleSpec::free_module(ring);
  return ModuleSpec::quotient(
      MonomialIdeal(ring, io::gens_from_json(spec["annihilator"])));
}

// ---------------------------------------------------------------------------
// command outputs: fixed CSV headers + mirrored JSON

struct CommandOutput {
  std::string csv_header;
  std::vector<std::string> csv_rows;
  json body;
  bool check_failed = false;
  std::optional<std::string> inconclusive;  // partial result, exit code 3
};

std::string csv_header_for(const std::string& command, const JobConfig& cfg) {
  if (command == "ideal-info") return "mu,ord,m_primary,colength,gens";
  if (command == "hs-fit") return "record,index,value";
  if (command == "beta") {
    const std::string label = "e" + std::to_string(cfg.budgets.i);
    return "e,q," + label + "_bracket," + label + "_over_qd,extrapolated";
  }
  if (command == "ehk") return "e,q,length,length_over_qd,extrapolated";
  if (command == "check-wy" || command == "check-northcott")
    return "name,lhs,rhs,slack,verdict,numerical";
  if (command == "check-decompose")
    return "k,ehk_power,residual,residual_normalized,exact_tail,in_tail_check,tail_match";
  if (command == "check-additivity")
    return "e,q,e1_left,e1_right,e1_sum,left_over_qd,right_over_qd,sum_over_qd,exact";
  if (command == "check-uniform") return "e,q,deviation,deviation_times_q";
  if (command == "check-bound") return "e,q,k,length,bound,ok";
  throw ParseError("unknown command '" + command + "'");
}

std::string ratf(const Rational& r) { return io::csv_field(hk::to_string(r)); }

std::string render_gens_json(const json& gens) { return io::csv_field(gens.dump()); }

CommandOutput run_ideal_info(const Work& work) {
  CommandOutput out;
  out.csv_header = "mu,ord,m_primary,colength,gens";
  if (const auto* w = std::get_if<RegularWork>(&work)) {
    const auto& ideal = w->ideal;
    const bool primary = is_m_primary(ideal);
    std::optional<BigInt> len;
    if (primary) len = w->backend.colength(ideal);
    json gens = io::to_json(ideal)["gens"];
    std::ostringstream row;
    row << ideal.num_gens() << ',' << ord(ideal) << ','
        << (primary ? "true" : "false") << ',' << (len ? len->str() : "") << ','
        << render_gens_json(gens);
    out.csv_rows.push_back(row.str());
    out.body = {{"mu", ideal.num_gens()},
                {"ord", ord(ideal)},
                {"m_primary", primary},
                {"gens", gens}};
    if (len) out.body["colength"] = io::to_json(*len);
    return out;
  }
  const auto& w = std::get<ToricWork>(work);
  const auto& ideal = w.ideal;
  std::string primary = "true";
  std::optional<BigInt> len;
  try {
    len = toric_colength(ideal);
  } catch (const CannotCertify&) {
    primary = "uncertified";
  }
  json gens = io::to_json(ideal)["gens"];
  std::ostringstream row;
  row << ideal.num_gens() << ',' << toric_ord(ideal) << ',' << primary << ','
      << (len ? len->str() : "") << ',' << render_gens_json(gens);
  out.csv_rows.push_back(row.str());
  out.body = {{"mu", ideal.num_gens()},
              {"ord", toric_ord(ideal)},
              {"m_primary", primary},
              {"gens", gens}};
  if (len) out.body["colength"] = io::to_json(*len);
  return out;
}

template <ColengthProvider B>
CommandOutput run_hs_fit(const B& backend, const typename B::Ideal& ideal,
                         const JobConfig& cfg, const ModuleSpec* module) {
  CommandOutput out;
  out.csv_header = "record,index,value";
  auto powers = make_power_cache(backend, ideal);
  std::vector<BigInt> samples;
  for (int k = 1; k <= cfg.budgets.k_max; ++k) {
    BigInt len;
    if constexpr (std::is_same_v<B, RegularBackend>) {
      len = backend.module_colength(
          powers->power(k), module ? *module : backend.trivial_module());
    } else {
      len = backend.colength(powers->power(k));
    }
    samples.push_back(len);
    out.csv_rows.push_back("sample," + std::to_string(k) + "," + len.str());
  }
  json jsamples = json::array();
  for (std::size_t k = 0; k < samples.size(); ++k)
    jsamples.push_back(
        {{"k", k + 1}, {"length", io::to_json(samples[k])}});
  out.body["samples"] = jsamples;

  auto sampler = make_sampler([&samples](int k) { return samples.at(k - 1); });
  int dim = backend.dim();
  int module_dim =
      module ? module->dim() : backend.module_dim(backend.trivial_module());
  try {
    HilbertCoefficients fit = fit_hilbert_coefficients(
        *sampler, dim, FitBudget{cfg.budgets.k_max}, module_dim);
    for (int i = 0; i <= dim; ++i)
      out.csv_rows.push_back("coeff," + std::to_string(i) + "," + fit.e[i].str());
    out.csv_rows.push_back("postulation,," + std::to_string(fit.postulation));
    out.csv_rows.push_back("verified_through,," +
                           std::to_string(fit.verified_through));
    out.body["fit"] = io::to_json(fit);
  } catch (const NoStabilization& ex) {
    // keep the partial sample table; the caller exits with the budget code
    out.inconclusive = ex.what();
    out.body["error"] = ex.what();
  }
  return out;
}

template <ColengthProvider B>
CommandOutput run_beta(const B& backend, const typename B::Ideal& ideal,
                       const JobConfig& cfg) {
  const int i = cfg.budgets.i;
  CommandOutput out;
  const std::string label = "e" + std::to_string(i);
  out.csv_header = "e,q," + label + "_bracket," + label + "_over_qd,extrapolated";
  LimitEstimate est = ei_limit_sequence(backend, ideal, i, cfg.budgets.E,
                                        FitBudget{cfg.budgets.k_max});
  const int d = backend.dim();
  for (std::size_t t = 0; t < est.terms.size(); ++t) {
    const auto& term = est.terms[t];
    const Rational raw = term.value * Rational(pow_int(BigInt(term.q), d));
    std::ostringstream row;
    row << term.e << ',' << term.q << ',' << hk::to_string(raw) << ','
        << hk::to_string(term.value) << ','
        << (t + 1 == est.terms.size() ? hk::to_string(est.extrapolated) : "");
    out.csv_rows.push_back(row.str());
  }
  out.body = io::to_json(est);
  out.body["coefficient_index"] = i;
  if constexpr (!B::kExactHilbertKunz) {
    // Elias-derived quantity (e(R)-1) e(I): reported, never asserted
    FitBudget fb{cfg.budgets.k_max};
    Rational ring_mult =
        Rational(fit_ideal_coefficients(backend, maximal_ideal(backend.ring()), fb).e[0]);
    Rational ideal_mult = Rational(fit_ideal_coefficients(backend, ideal, fb).e[0]);
    out.body["elias_reported_upper"] = io::to_json((ring_mult - 1) * ideal_mult);
  }
  return out;
}

template <ColengthProvider B>
CommandOutput run_ehk(const B& backend, const typename B::Ideal& ideal,
                      const JobConfig& cfg) {
  CommandOutput out;
  out.csv_header = "e,q,length,length_over_qd,extrapolated";
  LimitEstimate est = ehk_sequence(backend, ideal, cfg.budgets.E);
  const int d = backend.dim();
  for (std::size_t t = 0; t < est.terms.size(); ++t) {
    const auto& term = est.terms[t];
    const Rational raw = term.value * Rational(pow_int(BigInt(term.q), d));
    std::ostringstream row;
    row << term.e << ',' << term.q << ',' << hk::to_string(raw) << ','
        << hk::to_string(term.value) << ','
        << (t + 1 == est.terms.size() ? hk::to_string(est.extrapolated) : "");
    out.csv_rows.push_back(row.str());
  }
  out.body = io::to_json(est);
  if constexpr (B::kExactHilbertKunz)
    out.body["exact"] = io::to_json(ehk_exact(backend, ideal));
  return out;
}

std::string inequality_row(const InequalityReport& r) {
  std::ostringstream row;
  row << io::csv_field(r.name) << ',' << hk::to_string(r.lhs) << ','
      << hk::to_string(r.rhs) << ',' << hk::to_string(r.slack) << ','
      << to_string(r.verdict) << ',' << (r.numerical ? "true" : "false");
  return row.str();
}

template <ColengthProvider B>
CommandOutput run_check(const B& backend, const typename B::Ideal& ideal,
                        const std::string& which, const JobConfig& cfg,
                        const RegularRing* regular_ring) {
  const FitBudget fb{cfg.budgets.k_max};
  CommandOutput out;
  if (which == "wy") {
    InequalityReport r =
        wy_check(backend, ideal, cfg.budgets.n, cfg.budgets.E, fb, cfg.tolerance);
    out.csv_header = "name,lhs,rhs,slack,verdict,numerical";
    out.csv_rows.push_back(inequality_row(r));
    out.body = io::to_json(r);
    out.check_failed = r.verdict == Verdict::fails;
    return out;
  }
  if (which == "northcott") {
    NorthcottReport r =
        northcott_check(backend, ideal, cfg.budgets.E, fb, cfg.tolerance);
    if constexpr (!B::kExactHilbertKunz) {
      Rational ring_mult = Rational(
          fit_ideal_coefficients(backend, maximal_ideal(backend.ring()), fb).e[0]);
      r.elias_reported = (ring_mult - 1) * r.multiplicity;
    }
    out.csv_header = "name,lhs,rhs,slack,verdict,numerical";
    out.csv_rows.push_back(inequality_row(r.inequality));
    out.body = io::to_json(r);
    out.check_failed = r.inequality.verdict == Verdict::fails;
    return out;
  }
  if (which == "decompose") {
    DecomposeReport r = decompose_check(backend, ideal, cfg.budgets.E,
                                        cfg.budgets.K, fb);
    out.csv_header =
        "k,ehk_power,residual,residual_normalized,exact_tail,in_tail_check,tail_match";
    for (const auto& row : r.rows) {
      std::ostringstream line;
      line << row.k << ',' << ratf(row.ehk_power) << ',' << ratf(row.residual) << ','
           << ratf(row.residual_normalized) << ','
           << (row.exact_tail ? hk::to_string(*row.exact_tail) : "") << ','
           << (row.in_tail_check ? "true" : "false") << ','
           << (row.tail_match ? "true" : "false");
      out.csv_rows.push_back(line.str());
    }
    out.body = io::to_json(r);
    out.check_failed = !r.ok;
    return out;
  }
  if (which == "additivity") {
    typename B::Module left = backend.trivial_module();
    typename B::Module right = backend.trivial_module();
    if (cfg.modules_json) {
      if constexpr (std::is_same_v<B, RegularBackend>) {
        io::reject_unknown_fields(*cfg.modules_json, {"left", "right"}, "modules");
        if (cfg.modules_json->contains("left"))
          left = module_from_json(*regular_ring, (*cfg.modules_json)["left"]);
        if (cfg.modules_json->contains("right"))
          right = module_from_json(*regular_ring, (*cfg.modules_json)["right"]);
      } else {
        throw ParseError("modules: only M = R is available on the toric backend");
      }
    }
    AdditivityReport r = additivity_check(backend, ideal, left, right,
                                          cfg.budgets.E, fb);
    out.csv_header =
        "e,q,e1_left,e1_right,e1_sum,left_over_qd,right_over_qd,sum_over_qd,exact";
    for (const auto& row : r.rows) {
      std::ostringstream line;
      line << row.e << ',' << row.q << ',' << row.e1_left.str() << ','
           << row.e1_right.str() << ',' << row.e1_sum.str() << ','
           << ratf(row.left_normalized) << ',' << ratf(row.right_normalized) << ','
           << ratf(row.sum_normalized) << ',' << (row.exact ? "true" : "false");
      out.csv_rows.push_back(line.str());
    }
    out.body = io::to_json(r);
    out.check_failed = !r.all_exact;
    return out;
  }
  if (which == "uniform") {
    UniformReport r = uniform_convergence_diagnostic(backend, ideal, cfg.budgets.E,
                                                     cfg.budgets.K, cfg.budgets.E);
    out.csv_header = "e,q,deviation,deviation_times_q";
    for (const auto& row : r.rows) {
      std::ostringstream line;
      line << row.e << ',' << row.q << ',' << ratf(row.deviation) << ','
           << ratf(row.deviation_times_q);
      out.csv_rows.push_back(line.str());
    }
    out.body = io::to_json(r);
    out.check_failed = !r.ok;
    return out;
  }
  if (which == "bound") {
    typename B::Module module = backend.trivial_module();
    if (cfg.module_json) {
      if constexpr (std::is_same_v<B, RegularBackend>) {
        module = module_from_json(*regular_ring, *cfg.module_json);
      } else {
        throw ParseError("module: only M = R is available on the toric backend");
      }
    }
    BoundReport r = bound_diagnostic(backend, ideal, module, cfg.budgets.E,
                                     cfg.budgets.K, fb, cfg.corrupt_factor);
    out.csv_header = "e,q,k,length,bound,ok";
    for (const auto& row : r.rows) {
      std::ostringstream line;
      line << row.e << ',' << row.q << ',' << row.k << ',' << row.length.str() << ','
           << ratf(row.bound) << ',' << (row.ok ? "true" : "false");
      out.csv_rows.push_back(line.str());
    }
    out.body = io::to_json(r);
    out.check_failed = !r.all_ok;
    return out;
  }
  throw ParseError("check: unknown statement '" + which +
                   "' (expected wy|northcott|decompose|additivity|uniform|bound)");
}

CommandOutput run_one(const std::string& command, const Work& work,
                      const JobConfig& cfg) {
  if (command == "ideal-info") return run_ideal_info(work);
  return std::visit(
      [&](const auto& w) -> CommandOutput {
        const RegularRing* ring = nullptr;
        if constexpr (std::is_same_v<std::decay_t<decltype(w)>, RegularWork>)
          ring = &w.backend.ring();
        if (command == "hs-fit") {
          if constexpr (std::is_same_v<std::decay_t<decltype(w)>, RegularWork>) {
            std::optional<ModuleSpec> module;
            if (cfg.module_json) module = module_from_json(*ring, *cfg.module_json);
            return run_hs_fit(w.backend, w.ideal, cfg, module ? &*module : nullptr);
          } else {
            if (cfg.module_json)
              throw ParseError("module: only M = R is available on the toric backend");
            return run_hs_fit(w.backend, w.ideal, cfg, nullptr);
          }
        }
        if (command == "beta") return run_beta(w.backend, w.ideal, cfg);
        if (command == "ehk") return run_ehk(w.backend, w.ideal, cfg);
        if (command.rfind("check-", 0) == 0)
          return run_check(w.backend, w.ideal, command.substr(6), cfg, ring);
        throw ParseError("unknown command '" + command + "'");
      },
      work);
}

// ---------------------------------------------------------------------------
// sweep

struct SweepItem {
  std::string label;
  Work work;
};

struct SweepFamily {
  std::string name;
  std::vector<SweepItem> items;
};

std::vector<SweepFamily> build_families(const JobConfig& cfg) {
  std::vector<SweepFamily> families;
  for (const auto& f : cfg.families) {
    io::reject_unknown_fields(
        f, {"name", "type", "ring", "a_max", "b_max", "s_max", "ideals", "ideal", "p"},
        "family");
    SweepFamily family;
    family.name = f.at("name").get<std::string>();
    const std::string type = f.at("type").get<std::string>();
    auto regular_work = [&](const RegularRing& ring, std::vector<ExponentVec> gens) {
      ColengthOptions opt{.cross_check = cfg.paranoid};
      return Work(RegularWork{RegularBackend(ring, opt),
                              MonomialIdeal(ring, std::move(gens))});
    };
    if (type == "ci") {
      RegularRing ring = io::regular_ring_from_json(f.at("ring"));
      if (ring.d != 2) throw ParseError("family ci: needs a 2-dimensional ring");
      const std::int64_t a_max = f.value("a_max", std::int64_t{3});
      const std::int64_t b_max = f.value("b_max", std::int64_t{3});
      for (std::int64_t a = 1; a <= a_max; ++a)
        for (std::int64_t b = 1; b <= b_max; ++b)
          family.items.push_back({"a" + std::to_string(a) + "b" + std::to_string(b),
                                  regular_work(ring, {{a, 0}, {0, b}})});
    } else if (type == "m_powers") {
      RegularRing ring = io::regular_ring_from_json(f.at("ring"));
      const int s_max = f.value("s_max", 4);
      std::vector<ExponentVec> m_gens;
      for (int i = 0; i < ring.d; ++i) {
        ExponentVec v(ring.d, 0);
        v[i] = 1;
        m_gens.push_back(std::move(v));
      }
      MonomialIdeal m(ring, m_gens);
      for (int s = 1; s <= s_max; ++s)
        family.items.push_back(
            {"s" + std::to_string(s),
             Work(RegularWork{RegularBackend(ring, {.cross_check = cfg.paranoid}),
                              power(m, s)})});
    } else if (type == "explicit") {
      RegularRing ring = io::regular_ring_from_json(f.at("ring"));
      const json& ideals = f.at("ideals");
      for (std::size_t idx = 0; idx < ideals.size(); ++idx)
        family.items.push_back({"i" + std::to_string(idx),
                                regular_work(ring, io::gens_from_json(ideals[idx]))});
    } else if (type == "toric_a1") {
      ToricOptions opt;
      opt.cert_bound = cfg.budgets.cert_bound;
      opt.enumeration_cap = cfg.budgets.enumeration_cap;
      ToricRing2 ring = a1_ring(f.value("p", std::int64_t{2}), opt);
      ToricBackend backend(ring);
      SemigroupIdeal ideal = f.contains("ideal")
                                 ? SemigroupIdeal(ring, points_from_json(f["ideal"]))
                                 : maximal_ideal(ring);
      family.items.push_back({"m", Work(ToricWork{backend, ideal})});
    } else {
      throw ParseError("family: unknown type '" + type + "'");
    }
    families.push_back(std::move(family));
  }
  return families;
}

struct SweepJobResult {
  bool failed = false;
  std::string error;
  CommandOutput output;
};

int run_sweep(const JobConfig& cfg, int jobs, std::ostream& err) {
  if (cfg.commands.empty())
    throw ParseError("sweep: config must list 'commands'");
  auto families = build_families(cfg);

  struct JobRef {
    std::size_t family;
    std::size_t command;
    std::size_t item;
  };
  std::vector<JobRef> refs;
  for (std::size_t fi = 0; fi < families.size(); ++fi)
    for (std::size_t ci = 0; ci < cfg.commands.size(); ++ci)
      for (std::size_t ii = 0; ii < families[fi].items.size(); ++ii)
        refs.push_back({fi, ci, ii});

  std::vector<SweepJobResult> results(refs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= refs.size()) return;
      const JobRef& ref = refs[idx];
      SweepJobResult& slot = results[idx];
      try {
        slot.output = run_one(cfg.commands[ref.command],
                              families[ref.family].items[ref.item].work, cfg);
        if (slot.output.inconclusive) {
          slot.failed = true;
          slot.error = *slot.output.inconclusive;
        } else if (slot.output.check_failed) {
          slot.failed = true;
          slot.error = "check failed";
        }
      } catch (const std::exception& ex) {
        slot.failed = true;
        slot.error = ex.what();
      }
    }
  };
  const int thread_count = std::max(1, std::min<int>(jobs, 16));
  if (thread_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // deterministic ordered merge, one file per (family, command)
  std::filesystem::create_directories(cfg.output_dir);
  bool any_failed = false;
  for (std::size_t fi = 0; fi < families.size(); ++fi) {
    for (std::size_t ci = 0; ci < cfg.commands.size(); ++ci) {
      const std::string& command = cfg.commands[ci];
      const std::string stem = families[fi].name + "__" + command;
      // locate this (family, command) block in job order
      std::vector<std::size_t> block;
      for (std::size_t r = 0; r < refs.size(); ++r)
        if (refs[r].family == fi && refs[r].command == ci) block.push_back(r);

      if (cfg.format == "csv") {
        const std::string body_header = csv_header_for(command, cfg);
        const std::string header = "family,item,status," + body_header + ",error";
        std::ofstream file(cfg.output_dir + "/" + stem + ".csv");
        file << header << '\n';
        const std::size_t cols =
            static_cast<std::size_t>(
                std::count(body_header.begin(), body_header.end(), ',')) + 1;
        for (std::size_t r : block) {
          const auto& item = families[fi].items[refs[r].item];
          const auto& res = results[r];
          if (res.output.csv_rows.empty()) {
            std::string row = families[fi].name + "," + item.label + ",error";
            for (std::size_t c = 0; c < cols; ++c) row += ",";
            row += "," + io::csv_field(res.error);
            file << row << '\n';
            continue;
          }
          for (const auto& data : res.output.csv_rows) {
            file << families[fi].name << ',' << item.label << ','
                 << (res.failed ? "error" : "ok") << ',' << data << ','
                 << (res.failed ? io::csv_field(res.error) : "") << '\n';
          }
        }
      } else {
        json doc = {{"family", families[fi].name}, {"command", command}};
        json items = json::array();
        for (std::size_t r : block) {
          const auto& item = families[fi].items[refs[r].item];
          const auto& res = results[r];
          json entry = {{"item", item.label},
                        {"status", res.failed ? "error" : "ok"}};
          if (!res.error.empty()) entry["error"] = res.error;
          if (!res.output.body.is_null()) entry["report"] = res.output.body;
          items.push_back(std::move(entry));
        }
        doc["items"] = std::move(items);
        std::ofstream file(cfg.output_dir + "/" + stem + ".json");
        file << doc.dump(2) << '\n';
      }
      for (std::size_t r : block) any_failed = any_failed || results[r].failed;
      err << "sweep: wrote " << stem << " (" << block.size() << " jobs)\n";
    }
  }
  if (any_failed) {
    err << "sweep: some jobs failed\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

void emit(const CommandOutput& out, const JobConfig& cfg, std::ostream& os) {
  if (cfg.format == "csv") {
    os << out.csv_header << '\n';
    for (const auto& row : out.csv_rows) os << row << '\n';
  } else {
    os << out.body.dump(2) << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hilbert-Kunz multiplicities and limit coefficients of monomial "
               "and affine-semigroup ideals"};
  app.fallthrough();
  std::string config_path;
  std::string format_flag;
  std::string tolerance_flag;
  std::string out_dir_flag;
  bool paranoid = false;
  bool corrupt = false;
  int jobs = 1;
  app.add_option("-c,--config", config_path, "job configuration (JSON)");
  app.add_flag("--paranoid", paranoid, "cross-check colengths with the oracle path");
  app.add_option("--jobs", jobs, "sweep parallelism")->check(CLI::Range(1, 64));
  app.add_option("--format", format_flag, "csv or json");
  app.add_option("--tolerance", tolerance_flag, "numerical-equality gate, e.g. 1/100");
  app.add_option("--out", out_dir_flag, "sweep output directory");
  app.add_flag("--test-corrupt-lengths", corrupt, "corrupt grid lengths (test hook)")
      ->group("");

  app.require_subcommand(1);
  auto* cmd_info = app.add_subcommand("ideal-info", "generators, mu, ord, colength");
  auto* cmd_fit = app.add_subcommand("hs-fit", "Hilbert-Samuel samples and coefficients");
  auto* cmd_beta = app.add_subcommand("beta", "e_1(I^[q])/q^d sequence and limit");
  auto* cmd_ehk = app.add_subcommand("ehk", "Hilbert-Kunz sequence and limit");
  auto* cmd_check = app.add_subcommand("check", "verify a limit statement");
  std::string which;
  cmd_check->add_option("statement", which,
                        "wy|northcott|decompose|additivity|uniform|bound");
  auto* cmd_sweep = app.add_subcommand("sweep", "run families through commands");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (config_path.empty()) throw ParseError("missing --config FILE");
    std::ifstream file(config_path);
    if (!file) throw ParseError("cannot open config file: " + config_path);
    json doc;
    try {
      doc = json::parse(file);
    } catch (const json::exception& ex) {
      throw ParseError("config is not valid JSON: " + std::string(ex.what()));
    }
    JobConfig cfg = parse_config(doc);
    if (!format_flag.empty()) {
      if (format_flag != "csv" && format_flag != "json")
        throw ParseError("--format must be csv or json");
      cfg.format = format_flag;
    }
    if (!tolerance_flag.empty()) cfg.tolerance = io::parse_rational(tolerance_flag);
    if (!out_dir_flag.empty()) cfg.output_dir = out_dir_flag;
    if (paranoid) cfg.paranoid = true;
    if (corrupt) cfg.corrupt_factor = 100;

    if (cmd_sweep->parsed()) return run_sweep(cfg, jobs, err);

    std::string command;
    if (cmd_info->parsed()) command = "ideal-info";
    if (cmd_fit->parsed()) command = "hs-fit";
    if (cmd_beta->parsed()) command = "beta";
    if (cmd_ehk->parsed()) command = "ehk";
    if (cmd_check->parsed()) {
      if (which.empty()) which = cfg.check;
      if (which.empty())
        throw ParseError("check: missing statement (wy|northcott|decompose|"
                         "additivity|uniform|bound)");
      command = "check-" + which;
    }
    Work work = load_work(cfg);
    CommandOutput result = run_one(command, work, cfg);
    emit(result, cfg, out);
    if (result.inconclusive) {
      err << "inconclusive: " << *result.inconclusive << '\n';
      return kExitInconclusive;
    }
    return result.check_failed ? kExitCheckFailed : kExitOk;
  } catch (const ParseError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const InvalidInput& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const BudgetExceeded& ex) {
    err << "inconclusive: " << ex.what() << '\n';
    return kExitInconclusive;
  } catch (const NoStabilization& ex) {
    err << "inconclusive: " << ex.what() << '\n';
    return kExitInconclusive;
  } catch (const CannotCertify& ex) {
    err << "inconclusive: " << ex.what() << '\n';
    return kExitInconclusive;
  } catch (const InfiniteLength& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const Error& ex) {
    err << "failed: " << ex.what() << '\n';
    return kExitCheckFailed;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace hk::cli

