#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cabred/curve.hpp"
#include "cabred/errors.hpp"
#include "cabred/forms.hpp"
#include "cabred/generic.hpp"
#include "cabred/probe.hpp"
#include "cabred/punctured_line.hpp"
#include "cabred/rational.hpp"

namespace cabred {

using nlohmann::json;

inline void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  require(j.is_object(), where + ": expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    require(allowed.count(it.key()) != 0, where + ": unknown key '" + it.key() + "'");
}

inline Int parse_int(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
  }
  throw invalid_input(where + ": expected an integer");
}

// ---- curve specs ----
// {"p": int, "a": int, "b": int, "coeffs": [{"i": int, "j": int, "c": int}, ...]}

inline ValidationReport parse_curve_spec(const json& j) {
  check_keys(j, {"p", "a", "b", "coeffs"}, "curve spec");
  require(j.contains("p") && j.contains("a") && j.contains("b") && j.contains("coeffs"),
          "curve spec: p, a, b, coeffs are required");
  Int p = parse_int(j.at("p"), "curve spec p");
  Int a = parse_int(j.at("a"), "curve spec a");
  Int b = parse_int(j.at("b"), "curve spec b");
  require(p.fits_slong_p() && a.fits_sint_p() && b.fits_sint_p(), "curve spec: parameters out of range");
  require(j.at("coeffs").is_array(), "curve spec: coeffs must be an array");
  std::map<std::pair<int, int>, Int> coeffs;
  for (const auto& entry : j.at("coeffs")) {
    check_keys(entry, {"i", "j", "c"}, "curve spec coefficient");
    require(entry.contains("i") && entry.contains("j") && entry.contains("c"),
            "curve spec coefficient: i, j, c are required");
    Int ci = parse_int(entry.at("i"), "coefficient i");
    Int cj = parse_int(entry.at("j"), "coefficient j");
    require(ci.fits_sint_p() && cj.fits_sint_p(), "coefficient exponents out of range");
    coeffs[{static_cast<int>(ci.get_si()), static_cast<int>(cj.get_si())}] +=
        parse_int(entry.at("c"), "coefficient c");
  }
  return validate(p.get_si(), static_cast<int>(a.get_si()), static_cast<int>(b.get_si()), coeffs);
}

inline json curve_to_json(const CabParams& c) {
  json coeffs = json::array();
  for (const auto& [k, v] : c.coeffs)
    coeffs.push_back({{"i", k.first}, {"j", k.second}, {"c", v.get_str()}});
  return json{{"p", c.p}, {"a", c.a}, {"b", c.b}, {"coeffs", coeffs}};
}

// ---- smoothness reports ----

inline json unipoly_fp_to_json(const UniPoly<Fp>& f) {
  json a = json::array();
  for (const auto& c : f.coeffs()) a.push_back(c.value());
  return a;
}

inline json witness_to_json(const SingularWitness& w) {
  return json{{"modulus", unipoly_fp_to_json(w.field->modulus)},
              {"x", unipoly_fp_to_json(w.x.rep())},
              {"y", unipoly_fp_to_json(w.y.rep())}};
}

inline json smoothness_to_json(const SmoothnessCertificate& cert) {
  json j{{"smooth", cert.smooth}};
  if (cert.used_superelliptic_fast_path) {
    j["evidence"] = "superelliptic squarefree test";
  } else if (cert.resultant_gcd && cert.resultant_gcd->degree() == 0) {
    j["evidence"] = "constant resultant gcd";
    j["resultant_gcd"] = unipoly_fp_to_json(*cert.resultant_gcd);
  } else if (cert.smooth) {
    j["evidence"] = "all resultant factors cleared";
  }
  if (cert.shear != 0) j["shear"] = cert.shear;
  if (!cert.clearances.empty()) {
    json arr = json::array();
    for (const auto& c : cert.clearances) arr.push_back(unipoly_fp_to_json(c.factor));
    j["cleared_factors"] = arr;
  }
  if (cert.witness) j["witness"] = witness_to_json(*cert.witness);
  return j;
}

// ---- cohomology vectors and certificates ----

inline json vector_to_json(const CohomologyVector<Rat>& v) {
  json arr = json::array();
  for (const auto& [k, c] : v.entries())
    arr.push_back({{"i", k.first}, {"j", k.second}, {"c", c.to_string()}});
  return arr;
}

inline json bivar_to_json(const Bivar<Rat>& f) {
  json arr = json::array();
  for (const auto& [k, c] : f.terms())
    arr.push_back({{"i", k.first}, {"j", k.second}, {"c", c.to_string()}});
  return arr;
}

inline json certificate_to_json(const ExactnessCertificate<Rat>& cert) {
  return json{{"g", bivar_to_json(cert.g)},
              {"h", bivar_to_json(cert.h)},
              {"u", bivar_to_json(cert.u)},
              {"v", bivar_to_json(cert.v)}};
}

// ---- probe and sweep tables ----

struct ProbeRow {
  std::int64_t p = 0;
  int a = 0;
  int b = 0;
  Int alpha;
  int j = 0;
  int r = 0;
  long c = 0;
  int d = 0;
  int M = 0;
  std::size_t N_digits = 0;
  long nu = 0;
  bool bound_ok = false;
  std::string c_exact;     // empty when the cap was exceeded
  std::string crosscheck;  // "true"/"false", empty when skipped
  std::string note;        // warnings for skipped grid entries
};

inline const char* kSweepHeader =
    "p,a,b,alpha,j,r,c,d,M,N_digits,nu,bound_ok,C_d,crosscheck,note";

inline std::string row_to_csv(const ProbeRow& row) {
  std::string s;
  s += std::to_string(row.p) + "," + std::to_string(row.a) + "," + std::to_string(row.b) + ",";
  s += row.alpha.get_str() + ",";
  if (row.note.empty()) {
    s += std::to_string(row.j) + "," + std::to_string(row.r) + "," + std::to_string(row.c) + ",";
    s += std::to_string(row.d) + "," + std::to_string(row.M) + "," + std::to_string(row.N_digits) + ",";
    s += std::to_string(row.nu) + "," + (row.bound_ok ? "true" : "false") + ",";
    s += row.c_exact + "," + row.crosscheck + ",";
  } else {
    s += ",,,,,,,,,,";
  }
  s += row.note;
  return s;
}

inline json row_to_json(const ProbeRow& row) {
  json j{{"p", row.p}, {"a", row.a}, {"b", row.b}, {"alpha", row.alpha.get_str()}};
  if (row.note.empty()) {
    j["j"] = row.j;
    j["r"] = row.r;
    j["c"] = row.c;
    j["d"] = row.d;
    j["M"] = row.M;
    j["N_digits"] = row.N_digits;
    j["nu"] = row.nu;
    j["bound_ok"] = row.bound_ok;
    if (!row.c_exact.empty()) j["C_d"] = row.c_exact;
    if (!row.crosscheck.empty()) j["crosscheck"] = row.crosscheck == "true";
  } else {
    j["note"] = row.note;
  }
  return j;
}

// ---- sweep configuration ----

struct SweepConfig {
  std::vector<std::int64_t> primes;
  std::vector<std::pair<int, int>> pairs;
  std::vector<Int> alphas{Int(1)};
  int d_max = 3;
  Int exact_cap = Int(100000);
  Int crosscheck_cap = Int(1000);
  std::uint64_t seed = 0;
  std::string format = "csv";
};

inline SweepConfig parse_sweep_config(const json& j) {
  check_keys(j,
             {"primes", "pairs", "alphas", "d_max", "exact_cap", "crosscheck_cap", "seed", "format"},
             "sweep config");
  require(j.contains("primes") && j.contains("pairs"), "sweep config: primes and pairs are required");
  SweepConfig cfg;
  for (const auto& p : j.at("primes")) cfg.primes.push_back(parse_int(p, "sweep prime").get_si());
  for (const auto& pr : j.at("pairs")) {
    require(pr.is_array() && pr.size() == 2, "sweep config: pairs entries must be [a, b]");
    cfg.pairs.emplace_back(static_cast<int>(parse_int(pr[0], "pair a").get_si()),
                           static_cast<int>(parse_int(pr[1], "pair b").get_si()));
  }
  if (j.contains("alphas")) {
    cfg.alphas.clear();
    for (const auto& a : j.at("alphas")) cfg.alphas.push_back(parse_int(a, "sweep alpha"));
  }
  if (j.contains("d_max")) cfg.d_max = static_cast<int>(parse_int(j.at("d_max"), "d_max").get_si());
  if (j.contains("exact_cap")) cfg.exact_cap = parse_int(j.at("exact_cap"), "exact_cap");
  if (j.contains("crosscheck_cap")) cfg.crosscheck_cap = parse_int(j.at("crosscheck_cap"), "crosscheck_cap");
  if (j.contains("seed")) cfg.seed = static_cast<std::uint64_t>(parse_int(j.at("seed"), "seed").get_ui());
  if (j.contains("format")) {
    cfg.format = j.at("format").get<std::string>();
    require(cfg.format == "csv" || cfg.format == "json", "sweep config: format must be csv or json");
  }
  return cfg;
}

// ---- symbolic locus reports ----

inline json laurent_terms_to_json(const VarSetPtr& vars,
                                  const std::vector<std::pair<std::vector<int>, Int>>& terms) {
  json arr = json::array();
  for (const auto& [exps, coeff] : terms) {
    json es = json::array();
    for (std::size_t k = 0; k < exps.size(); ++k)
      if (exps[k] != 0) es.push_back({vars->names[k], exps[k]});
    arr.push_back({{"exponents", es}, {"num", coeff.get_str()}, {"den", "1"}});
  }
  return arr;
}

inline json laurent_to_json(const MultiLaurent& g) {
  json arr = json::array();
  for (const auto& [exps, coeff] : g.terms()) {
    json es = json::array();
    for (std::size_t k = 0; k < exps.size(); ++k)
      if (exps[k] != 0) es.push_back({g.vars()->names[k], exps[k]});
    arr.push_back({{"exponents", es},
                   {"num", coeff.num().get_str()},
                   {"den", coeff.den().get_str()}});
  }
  return arr;
}

inline json locus_to_json(const GenericFamily& fam, const LocusReport& rep) {
  return json{{"p", rep.p},
              {"a", rep.a},
              {"b", rep.b},
              {"d", rep.d},
              {"j", rep.j},
              {"r", rep.r},
              {"i_d", rep.i_d.get_str()},
              {"l_d", rep.l_d},
              {"long_chain", rep.long_chain},
              {"g_exact", laurent_to_json(rep.g_exact)},
              {"locus_mod_p", laurent_terms_to_json(fam.vars, rep.locus_mod_p)},
              {"max_coeff_terms", rep.stats.max_coeff_terms},
              {"steps", rep.stats.steps}};
}

// ---- punctured-line forms ----
// Either principal-part shape:
//   {"punctures": [...], "poly": ["...", ...], "principal": [["...", ...], ...]}
// or rational shape:
//   {"punctures": [...], "num": ["...", ...], "mult": [m_1, ...]}

inline PuncturedLineForm parse_punctured_form(const json& j) {
  check_keys(j, {"punctures", "poly", "principal", "num", "mult", "p"}, "punctured form");
  require(j.contains("punctures"), "punctured form: punctures are required");
  std::vector<Int> punctures;
  for (const auto& a : j.at("punctures")) punctures.push_back(parse_int(a, "puncture"));
  if (j.contains("p")) {
    Int p = parse_int(j.at("p"), "punctured form p");
    require(is_prime(p), "punctured form: p must be prime");
    for (std::size_t i = 0; i < punctures.size(); ++i)
      for (std::size_t k = i + 1; k < punctures.size(); ++k)
        require((punctures[i] - punctures[k]) % p != 0, "punctured form: punctures coincide mod p");
  }
  auto parse_rats = [](const json& arr, const std::string& where) {
    require(arr.is_array(), where + ": expected an array");
    std::vector<Rat> out;
    for (const auto& e : arr)
      out.push_back(e.is_string() ? Rat::parse(e.get<std::string>()) : Rat(parse_int(e, where)));
    return out;
  };

  if (j.contains("num") || j.contains("mult")) {
    require(j.contains("num") && j.contains("mult") && !j.contains("poly") && !j.contains("principal"),
            "punctured form: rational shape takes num and mult only");
    std::vector<int> mults;
    for (const auto& m : j.at("mult"))
      mults.push_back(static_cast<int>(parse_int(m, "multiplicity").get_si()));
    return punctured_form_from_rational(UniPoly<Rat>(parse_rats(j.at("num"), "num")),
                                        std::move(punctures), mults);
  }

  PuncturedLineForm f;
  f.punctures = std::move(punctures);
  if (j.contains("poly")) f.poly = UniPoly<Rat>(parse_rats(j.at("poly"), "poly"));
  if (j.contains("principal")) {
    for (const auto& parts : j.at("principal")) f.principal.push_back(parse_rats(parts, "principal"));
  }
  f.principal.resize(f.punctures.size());
  validate_form(f);
  return f;
}

inline json residues_to_json(const std::vector<Rat>& residues) {
  json arr = json::array();
  for (const auto& r : residues) arr.push_back(r.to_string());
  return json{{"residues", arr}};
}

}  // namespace cabred
