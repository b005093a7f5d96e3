#include "padix/formulas.hpp"
#include "padix/harness.hpp"
#include "padix/oracle.hpp"
#include "padix/residue_poly.hpp"
#include "padix/root_counter.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

using namespace padix;
using nlohmann::ordered_json;

namespace {

std::uint64_t parse_seed(const std::string& s) {
  std::size_t pos = 0;
  const bool hex = s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X');
  const auto v = std::stoull(hex ? s.substr(2) : s, &pos, hex ? 16 : 10);
  if (pos != (hex ? s.size() - 2 : s.size())) throw std::invalid_argument("bad seed '" + s + "'");
  return v;
}

std::vector<long long> parse_int_list(const std::string& s) {
  std::vector<long long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
  if (out.empty()) throw std::invalid_argument("empty coefficient list");
  return out;
}

int default_workers() {
  if (const char* env = std::getenv("PADIX_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// ---------------------------------------------------------------- formulas

struct FormulaArgs {
  std::string name;
  long long p = 3, n = 0, r = 1, m = 1, e = 1, f = 1, d = 1, disc = 0;
  int digits = 30;
  std::string model = "poly";
  bool json = false;
};

ordered_json rational_json(const Rational& q) {
  ordered_json j;
  j["exact"] = format_rational(q);
  j["decimal"] = format_decimal(to_decimal(q));
  return j;
}

ordered_json band_json(const FormulaBand& b) {
  ordered_json j;
  auto side = [](const Decimal& d, const std::optional<Rational>& q) {
    ordered_json s;
    s["exact"] = q ? ordered_json(format_rational(*q)) : ordered_json();
    s["decimal"] = format_decimal(d);
    return s;
  };
  j["lower"] = side(b.lower, b.exact_lower);
  j["center"] = side(b.center, b.exact_center);
  j["upper"] = side(b.upper, b.exact_upper);
  j["provenance"] = b.provenance;
  return j;
}

ordered_json eval_formula(const FormulaArgs& a) {
  const auto P = [&] { return PrimeBase(static_cast<std::uint32_t>(a.p)); };
  const auto I = [](long long v) { return static_cast<int>(v); };
  ordered_json j;
  const std::string& nm = a.name;
  if (nm == "mobius") {
    j["value"] = mobius(a.n);
  } else if (nm == "divisor-count") {
    j["value"] = divisor_count(a.n);
  } else if (nm == "generator-count") {
    j["value"] = generator_count(P(), I(a.r)).str();
  } else if (nm == "q-pochhammer") {
    auto c = q_pochhammer_tail(P(), I(a.m), a.digits);
    j["decimal"] = format_decimal(c.value, a.digits);
    j["error_bound"] = format_decimal(c.error_bound, 6);
    j["terms"] = c.terms;
  } else if (nm == "matrix-degree-constant") {
    auto c = matrix_degree_constant(P(), a.digits);
    j["decimal"] = format_decimal(c.value, a.digits);
    j["error_bound"] = format_decimal(c.error_bound, 6);
    j["terms"] = c.terms;
  } else if (nm == "poly-degree-constant") {
    j = rational_json(poly_degree_constant(P()));
  } else if (nm == "outside-un-bound") {
    j = rational_json(outside_un_bound(parse_model(a.model), P()));
  } else if (nm == "serre-mass") {
    j = rational_json(serre_mass(P(), I(a.e), I(a.f)));
  } else if (nm == "ramified-quadratic") {
    j = rational_json(ramified_quadratic_poly_expectation(P(), rpow(a.p, -I(a.disc))));
  } else if (nm == "poly-not-unramified-upper") {
    j = rational_json(poly_not_unramified_upper(P(), I(a.f), rpow(a.p, -I(a.disc))));
  } else if (nm == "orbital-ratio-bound") {
    j = rational_json(orbital_ratio_bound(P(), I(a.d)));
  } else if (nm == "gaussian-binomial") {
    j["value"] = gaussian_binomial(I(a.n), I(a.r), P()).str();
  } else if (nm == "gl-order") {
    j["value"] = gl_order(P(), I(a.r)).str();
  } else if (nm == "det-singular-bound") {
    j = rational_json(det_singular_prob_bound(P(), I(a.n), I(a.r)));
  } else if (nm == "unramified-poly-band") {
    j = band_json(unramified_poly_band(P(), I(a.r), I(a.n)));
  } else if (nm == "matrix-unramified-band") {
    j = band_json(matrix_unramified_band(P(), I(a.r), I(a.n)));
  } else if (nm == "matrix-fixed-extension-band") {
    j = band_json(matrix_fixed_extension_band(P(), I(a.e), I(a.f), I(a.disc)));
  } else {
    throw std::invalid_argument("unknown formula '" + nm + "'");
  }
  ordered_json out;
  out["formula"] = nm;
  for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = it.value();
  return out;
}

void print_plain(const ordered_json& j, const std::string& indent = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.value().is_object()) {
      std::cout << indent << it.key() << ":\n";
      print_plain(it.value(), indent + "  ");
    } else if (it.value().is_string()) {
      std::cout << indent << it.key() << ": " << it.value().get<std::string>() << "\n";
    } else {
      std::cout << indent << it.key() << ": " << it.value().dump() << "\n";
    }
  }
}

// ---------------------------------------------------------------- oracle

ordered_json report_json(const EnumerationReport& r) {
  ordered_json j;
  j["total_cases"] = r.total_cases;
  j["hit_count"] = r.hit_count;
  j["probability"] = format_rational(r.probability);
  j["bound"] = format_rational(r.bound);
  j["satisfied"] = r.satisfied;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"padix: eigenvalues of Haar-random p-adic matrices and roots of Haar-random polynomials"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  // mc
  auto* mc = app.add_subcommand("mc", "run a Monte Carlo experiment");
  std::string model = "poly", seed_text = "0", targets, out_path, format = "csv";
  std::uint32_t p = 3;
  int n = 3, k = 16, k_max = 64, workers = default_workers(), max_depth = CountBudget{}.max_depth;
  std::uint64_t samples = 1000;
  double cap = 1e-3;
  bool paranoid = false, digest = false;
  app.set_config("--config", "", "TOML file with defaults; mc flags go under [mc]");
  mc->fallthrough();
  mc->add_option("--model", model, "matrix | poly")->check(CLI::IsMember({"matrix", "poly"}));
  mc->add_option("--p", p, "prime");
  mc->add_option("--n", n, "matrix size or polynomial degree");
  mc->add_option("--precision", k, "initial p-adic digits");
  mc->add_option("--precision-max", k_max, "escalation ceiling");
  mc->add_option("--samples", samples, "number of samples");
  mc->add_option("--seed", seed_text, "seed (decimal or 0x hex)");
  mc->add_option("--targets", targets, "e.g. \"unram:1@new;unram:2@new;outside-un\"");
  mc->add_option("--workers", workers, "threads (default: PADIX_WORKERS or hardware)");
  mc->add_option("--out", out_path, "output file (default stdout)");
  mc->add_option("--format", format, "csv | json | table")->check(CLI::IsMember({"csv", "json", "table"}));
  mc->add_option("--max-depth", max_depth, "descent depth budget at the initial precision");
  mc->add_option("--inconclusive-cap", cap, "allowed inconclusive rate per row");
  mc->add_flag("--paranoid", paranoid, "check per-sample invariants");
  mc->add_flag("--digest", digest, "add a digest of all per-sample values (json)");

  // formulas
  auto* fo = app.add_subcommand("formulas", "evaluate a closed form or band");
  FormulaArgs fa;
  fo->add_option("name", fa.name,
                 "mobius | divisor-count | generator-count | q-pochhammer | matrix-degree-constant | "
                 "poly-degree-constant | outside-un-bound | serre-mass | ramified-quadratic | "
                 "poly-not-unramified-upper | orbital-ratio-bound | gaussian-binomial | gl-order | "
                 "det-singular-bound | unramified-poly-band | matrix-unramified-band | matrix-fixed-extension-band")
      ->required();
  fo->add_option("--p", fa.p);
  fo->add_option("--n", fa.n);
  fo->add_option("--r", fa.r);
  fo->add_option("--m", fa.m);
  fo->add_option("--e", fa.e);
  fo->add_option("--f", fa.f);
  fo->add_option("--d", fa.d);
  fo->add_option("--disc", fa.disc, "discriminant valuation");
  fo->add_option("--digits", fa.digits);
  fo->add_option("--model", fa.model)->check(CLI::IsMember({"matrix", "poly"}));
  fo->add_flag("--json", fa.json);

  // oracle
  auto* orc = app.add_subcommand("oracle", "exhaustive oracles");
  orc->require_subcommand(1);
  std::uint32_t op = 2;
  int on = 2, orr = 2, ok = 3, oworkers = default_workers();
  std::string oz, oring = "unram:1", opoly;
  std::uint64_t obudget = 0;
  auto* det = orc->add_subcommand("det-census", "count A in Mat_n(F_p) with det Z(A) = 0");
  det->add_option("--p", op);
  det->add_option("--n", on);
  det->add_option("--r", orr, "degree of the canonical irreducible Z");
  det->add_option("--z", oz, "explicit Z as c0,c1,...,1");
  det->add_option("--budget", obudget);
  det->add_option("--workers", oworkers);
  auto* gen = orc->add_subcommand("gen-census", "count generators of F_{p^r}");
  gen->add_option("--p", op);
  gen->add_option("--r", orr);
  auto* rc = orc->add_subcommand("root-census", "enumerate O_K / pi^N and count root classes");
  rc->add_option("--p", op);
  rc->add_option("--k", ok);
  rc->add_option("--ring", oring);
  rc->add_option("--poly", opoly, "coefficients c0,c1,...,cn")->required();
  rc->add_option("--budget", obudget);

  // check / report
  auto* ck = app.add_subcommand("check", "re-judge a CSV or JSON report");
  std::string ck_path;
  double ck_cap = 1e-3;
  ck->add_option("file", ck_path)->required()->check(CLI::ExistingFile);
  ck->add_option("--inconclusive-cap", ck_cap);
  auto* rp = app.add_subcommand("report", "render a report in another format");
  std::string rp_in, rp_format = "table";
  rp->add_option("--in", rp_in)->required()->check(CLI::ExistingFile);
  rp->add_option("--format", rp_format)->check(CLI::IsMember({"csv", "json", "table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*mc) {
      ExperimentSpec spec;
      try {
        spec.model = parse_model(model);
        spec.p = PrimeBase(p);
        spec.n = n;
        spec.k = k;
        spec.k_max = k_max;
        spec.samples = samples;
        spec.seed = parse_seed(seed_text);
        spec.targets = parse_targets(targets, spec.p);
        spec.budget.max_depth = max_depth;
        spec.workers = workers;
        spec.paranoid = paranoid;
        spec.digest = digest;
        spec.inconclusive_cap = cap;
        spec.validate();
      } catch (const std::exception& e) {
        std::cerr << "padix mc: " << e.what() << "\n";
        return 2;
      }
      const ReportBundle bundle = run_experiment(spec);
      const ReportFormat fmt = parse_format(format);
      if (out_path.empty()) write_report(bundle, fmt, std::cout);
      else write_report(bundle, fmt, out_path);
      const CheckOutcome res = assess(bundle);
      for (const auto& m : res.messages) std::cerr << m << "\n";
      return res.exit_code;
    }
    if (*fo) {
      ordered_json j;
      try {
        j = eval_formula(fa);
      } catch (const std::invalid_argument& e) {
        std::cerr << "padix formulas: " << e.what() << "\n";
        return 2;
      }
      if (fa.json) std::cout << j.dump(2) << "\n";
      else print_plain(j);
      return 0;
    }
    if (*orc) {
      ordered_json j;
      if (*det) {
        const PrimeBase P(op);
        std::vector<std::uint32_t> Z;
        if (!oz.empty()) {
          for (long long c : parse_int_list(oz)) Z.push_back(static_cast<std::uint32_t>(((c % op) + op) % op));
        } else {
          Z = canonical_irreducible(P, orr);
        }
        auto rep = det_singular_census(P, on, Z, obudget ? obudget : kDefaultEnumerationBudget, oworkers);
        j["p"] = op;
        j["n"] = on;
        j["z"] = Z;
        const ordered_json rj = report_json(rep);
        for (auto it = rj.begin(); it != rj.end(); ++it) j[it.key()] = it.value();
      } else if (*gen) {
        const PrimeBase P(op);
        j["p"] = op;
        j["r"] = orr;
        j["census"] = generator_census(P, orr);
        j["formula"] = generator_count(P, orr).str();
        j["agree"] = BigInt(j["census"].get<std::uint64_t>()) == generator_count(P, orr);
      } else {
        const PrimeBase P(op);
        const RingDescriptor R = RingDescriptor::parse(oring, P);
        std::vector<PadicDigits> F;
        for (long long c : parse_int_list(opoly)) F.push_back(PadicDigits::from_int(P, ok, c));
        auto cen = residue_root_census(F, R, ok, obudget ? obudget : kDefaultResidueBudget);
        auto cnt = count_integral_roots(F, make_ring(R, ok));
        j["ring"] = R.text();
        j["k"] = ok;
        j["census_count"] = cen.count;
        j["census_decisive"] = cen.decisive;
        j["enumerated"] = cen.enumerated;
        j["root_counter"] = cnt.describe();
      }
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (*ck) {
      const CheckOutcome res = check(ck_path, ck_cap);
      for (const auto& m : res.messages) std::cerr << m << "\n";
      if (res.exit_code == 0) std::cout << "ok\n";
      return res.exit_code;
    }
    if (*rp) {
      ReportBundle b;
      b.rows = read_rows(rp_in);
      if (!b.rows.empty()) {
        const auto& r0 = b.rows.front();
        b.spec.model = parse_model(r0.model);
        b.spec.p = PrimeBase(r0.p);
        b.spec.n = r0.n;
        b.spec.k = r0.k;
        b.spec.seed = r0.seed;
        b.spec.samples = r0.n_eff + r0.n_inconclusive;
      }
      write_report(b, parse_format(rp_format), std::cout);
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "padix: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "padix: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
