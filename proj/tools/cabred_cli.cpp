// Command-line front end: curve validation and smoothness reports, reduction
// to the cohomology basis, infiniteness probes and sweeps, symbolic locus
// computations, and punctured-line residues.  All output is machine-readable
// and byte-stable for a fixed configuration and seed.

#include <atomic>
#include <exception>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "cabred/curve.hpp"
#include "cabred/generic.hpp"
#include "cabred/io.hpp"
#include "cabred/probe.hpp"
#include "cabred/punctured_line.hpp"
#include "cabred/reduce.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitCap = 3;
constexpr int kExitInternal = 4;

using namespace cabred;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw invalid_input("cannot open output file: " + out_path);
  os << text;
}

json load_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw invalid_input("cannot open input file: " + path);
  json j;
  try {
    is >> j;
  } catch (const json::parse_error& e) {
    throw invalid_input("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

struct FormSpec {
  int i = 0;
  int j = 0;
  FormKind kind = FormKind::dx;
  Rat coeff = Rat(1);
};

FormSpec parse_form_spec(const std::string& text) {
  std::istringstream is(text);
  std::string si, sj, skind, scoeff;
  if (!(is >> si >> sj >> skind)) throw invalid_input("form spec must be \"i j dx|dy [coeff]\"");
  FormSpec spec;
  try {
    spec.i = std::stoi(si);
    spec.j = std::stoi(sj);
  } catch (const std::exception&) {
    throw invalid_input("form spec: bad exponents in '" + text + "'");
  }
  if (spec.i < 0 || spec.j < 0) throw invalid_input("form spec: exponents must be nonnegative");
  if (skind == "dx") {
    spec.kind = FormKind::dx;
  } else if (skind == "dy") {
    spec.kind = FormKind::dy;
  } else {
    throw invalid_input("form spec: kind must be dx or dy");
  }
  if (is >> scoeff) spec.coeff = Rat::parse(scoeff);
  std::string rest;
  if (is >> rest) throw invalid_input("form spec: trailing tokens in '" + text + "'");
  return spec;
}

int run_check(const std::string& file, std::uint64_t seed, const std::string& out) {
  ValidationReport rep = parse_curve_spec(load_json(file));
  if (!rep.ok()) {
    json j{{"valid", false}, {"violations", rep.violations}};
    write_output(j.dump(2) + "\n", out);
    return kExitValidation;
  }
  const CabParams& curve = *rep.params;
  std::mt19937_64 rng(seed);
  SmoothnessCertificate cert = is_smooth(curve, rng);
  json j{{"valid", true},
         {"smooth", cert.smooth},
         {"genus", genus(curve.a, curve.b)},
         {"lift", curve_to_json(curve)}};
  j.update(smoothness_to_json(cert));
  write_output(j.dump(2) + "\n", out);
  return kExitOk;
}

int run_reduce(const std::string& file, const std::vector<std::string>& form_specs,
               bool want_certificate, std::uint64_t seed, const std::string& out) {
  ValidationReport rep = parse_curve_spec(load_json(file));
  if (!rep.ok()) {
    json j{{"valid", false}, {"violations", rep.violations}};
    write_output(j.dump(2) + "\n", out);
    return kExitValidation;
  }
  const CabParams& curve = *rep.params;
  std::mt19937_64 rng(seed);
  if (!is_smooth(curve, rng).smooth) {
    write_output(json{{"valid", false}, {"violations", {"special fiber is singular"}}}.dump(2) + "\n",
                 out);
    return kExitValidation;
  }
  if (form_specs.empty()) throw invalid_input("reduce: at least one --form is required");
  DifferentialForm<Rat> form;
  for (const auto& text : form_specs) {
    FormSpec spec = parse_form_spec(text);
    form.add_term({spec.i, spec.j, spec.kind}, spec.coeff);
  }
  ReduceOptions opt;
  opt.want_certificate = want_certificate;
  CurveRing<Rat> ring = curve_ring(curve);
  auto res = reduce_to_basis(form, ring, opt);
  json j{{"vector", vector_to_json(res.vector)},
         {"steps", res.stats.steps},
         {"lift", curve_to_json(curve)}};
  if (res.certificate) {
    ensure(check_certificate(form, res.vector, *res.certificate, ring),
           "reduce: emitted certificate failed verification");
    j["certificate"] = certificate_to_json(*res.certificate);
    j["verified"] = true;
  }
  write_output(j.dump(2) + "\n", out);
  return kExitOk;
}

std::vector<ProbeRow> probe_rows(std::int64_t p, int a, int b, const Int& alpha, int d_max,
                                 const Int& exact_cap, const Int& crosscheck_cap) {
  const ResidueChoice rc = solve_jr(p, a, b);
  std::vector<ProbeRow> rows;
  for (const ProbeResult& res : probe(p, a, b, alpha, d_max, exact_cap)) {
    ProbeRow row;
    row.p = p;
    row.a = a;
    row.b = b;
    row.alpha = alpha;
    row.j = rc.j;
    row.r = rc.r;
    row.c = rc.c;
    row.d = res.d;
    row.M = res.M;
    row.N_digits = res.N.get_str().size();
    row.nu = res.nu;
    row.bound_ok = res.bound_ok;
    ensure(res.bound_ok, "probe: nu <= -d failed, which contradicts the valuation bound");
    if (res.c_exact) row.c_exact = res.c_exact->to_string();
    if (res.N <= crosscheck_cap) {
      bool ok = crosscheck_reduction(p, a, b, alpha, res.d, crosscheck_cap);
      ensure(ok, "probe: reduction crosscheck failed");
      row.crosscheck = ok ? "true" : "false";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string render_rows(const std::vector<ProbeRow>& rows, const std::string& format,
                        std::uint64_t seed) {
  if (format == "json") {
    json arr = json::array();
    for (const auto& row : rows) arr.push_back(row_to_json(row));
    return json{{"version", "cabred-sweep-v1"}, {"seed", seed}, {"rows", arr}}.dump(2) + "\n";
  }
  std::string text = "# cabred-sweep-v1 seed=" + std::to_string(seed) + "\n";
  text += std::string(kSweepHeader) + "\n";
  for (const auto& row : rows) text += row_to_csv(row) + "\n";
  return text;
}

int run_probe(std::int64_t p, int a, int b, const Int& alpha, int d_max, const Int& exact_cap,
              const Int& crosscheck_cap, const std::string& format, std::uint64_t seed,
              const std::string& out) {
  std::vector<ProbeRow> rows = probe_rows(p, a, b, alpha, d_max, exact_cap, crosscheck_cap);
  write_output(render_rows(rows, format, seed), out);
  return kExitOk;
}

int run_sweep(const std::string& config_file, const std::string& out) {
  SweepConfig cfg = parse_sweep_config(load_json(config_file));

  struct Tuple {
    std::int64_t p;
    int a, b;
    Int alpha;
    std::string warning;
  };
  std::vector<Tuple> tuples;
  for (std::int64_t p : cfg.primes) {
    for (const auto& [a, b] : cfg.pairs) {
      for (const Int& alpha : cfg.alphas) {
        std::string warning;
        if (a < 2 || b < 2) {
          warning = "skipped: a and b must be at least 2";
        } else if (std::gcd(a, b) != 1) {
          warning = "skipped: gcd(a,b) != 1";
        } else if (!is_prime(Int(static_cast<long>(p)))) {
          warning = "skipped: p is not prime";
        } else if ((static_cast<std::int64_t>(a) * b) % p == 0) {
          warning = "skipped: p divides ab";
        } else if (Fp::from_int(alpha, p).is_zero()) {
          warning = "skipped: alpha is zero mod p";
        }
        tuples.push_back({p, a, b, alpha, warning});
      }
    }
  }

  std::vector<std::vector<ProbeRow>> results(tuples.size());
  std::vector<std::exception_ptr> errors(tuples.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t idx = next.fetch_add(1);
      if (idx >= tuples.size()) return;
      const Tuple& t = tuples[idx];
      try {
        if (!t.warning.empty()) {
          ProbeRow row;
          row.p = t.p;
          row.a = t.a;
          row.b = t.b;
          row.alpha = t.alpha;
          row.note = t.warning;
          results[idx] = {row};
        } else {
          results[idx] = probe_rows(t.p, t.a, t.b, t.alpha, cfg.d_max, cfg.exact_cap,
                                    cfg.crosscheck_cap);
        }
      } catch (...) {
        errors[idx] = std::current_exception();
      }
    }
  };
  const std::size_t n_workers =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(),
                                                     tuples.size()));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);

  std::vector<ProbeRow> rows;
  for (auto& part : results)
    for (auto& row : part) rows.push_back(std::move(row));
  write_output(render_rows(rows, cfg.format, cfg.seed), out);
  return kExitOk;
}

int run_generic(int a, int b, std::int64_t p, int d, long symbolic_cap, const Int& exact_cap,
                const std::string& out) {
  GenericFamily fam = GenericFamily::make(p, a, b);
  ResidueChoice rc = solve_jr(p, a, b);
  LocusReport rep = locus(fam, rc, d, symbolic_cap, exact_cap);
  write_output(locus_to_json(fam, rep).dump(2) + "\n", out);
  return kExitOk;
}

int run_genus0(const std::string& file, const std::string& out) {
  PuncturedLineForm form = parse_punctured_form(load_json(file));
  write_output(residues_to_json(residue_reduce(form)).dump(2) + "\n", out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact de Rham reduction and p-adic growth probes for plane curves"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  app.add_option("--seed", seed, "seed for the randomized splitting steps")->capture_default_str();
  app.add_option("--out", out, "write output to a file instead of stdout");

  auto* c_check = app.add_subcommand("check", "validate a curve spec and test smoothness");
  std::string check_file;
  c_check->add_option("curve", check_file, "curve spec JSON file")->required();

  auto* c_reduce = app.add_subcommand("reduce", "reduce 1-forms to the cohomology basis");
  std::string reduce_file;
  std::vector<std::string> reduce_forms;
  bool want_cert = false;
  c_reduce->add_option("curve", reduce_file, "curve spec JSON file")->required();
  c_reduce->add_option("--form", reduce_forms, "monomial form \"i j dx|dy [coeff]\"; repeatable")
      ->required();
  c_reduce->add_flag("--certificate", want_cert, "emit and verify an exactness certificate");

  auto* c_probe = app.add_subcommand("probe", "valuation probes for one superelliptic curve");
  std::int64_t pr_p = 0;
  int pr_a = 0, pr_b = 0, pr_dmax = 1;
  std::string pr_alpha = "1";
  std::string pr_exact_cap = "100000", pr_cross_cap = "1000";
  c_probe->add_option("p", pr_p)->required();
  c_probe->add_option("a", pr_a)->required();
  c_probe->add_option("b", pr_b)->required();
  c_probe->add_option("alpha", pr_alpha)->required();
  c_probe->add_option("d_max", pr_dmax)->required();
  c_probe->add_option("--exact-cap", pr_exact_cap, "largest N for exact coefficient products");
  c_probe->add_option("--crosscheck-cap", pr_cross_cap, "largest N for reduction crosschecks");
  c_probe->add_option("--format", format, "csv or json");

  auto* c_sweep = app.add_subcommand("sweep", "probe a parameter grid from a config file");
  std::string sweep_file;
  c_sweep->add_option("config", sweep_file, "sweep config JSON file")->required();

  auto* c_generic = app.add_subcommand("generic", "symbolic locus datum for a curve family");
  int g_a = 0, g_b = 0, g_d = 1;
  std::int64_t g_p = 0;
  long g_symcap = -1;
  std::string g_exact_cap = "100000";
  c_generic->add_option("a", g_a)->required();
  c_generic->add_option("b", g_b)->required();
  c_generic->add_option("p", g_p)->required();
  c_generic->add_option("d", g_d)->required();
  c_generic->add_option("--symbolic-cap", g_symcap, "largest i for fully symbolic reduction");
  c_generic->add_option("--exact-cap", g_exact_cap, "largest N for the long-chain mode");

  auto* c_genus0 = app.add_subcommand("genus0", "residue coordinates on a punctured line");
  std::string genus0_file;
  c_genus0->add_option("form", genus0_file, "punctured-line form JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_check) return run_check(check_file, seed, out);
    if (*c_reduce) return run_reduce(reduce_file, reduce_forms, want_cert, seed, out);
    if (*c_probe)
      return run_probe(pr_p, pr_a, pr_b, Int(pr_alpha), pr_dmax, Int(pr_exact_cap),
                       Int(pr_cross_cap), format, seed, out);
    if (*c_sweep) return run_sweep(sweep_file, out);
    if (*c_generic) return run_generic(g_a, g_b, g_p, g_d, g_symcap, Int(g_exact_cap), out);
    if (*c_genus0) return run_genus0(genus0_file, out);
  } catch (const cap_exceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const invalid_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
