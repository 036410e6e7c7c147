#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "makeev/bounds.hpp"
#include "makeev/certify.hpp"
#include "makeev/equipart.hpp"
#include "makeev/io.hpp"
#include "makeev/parallel.hpp"

namespace {

using nlohmann::json;

constexpr int kExitCertified = 0;
constexpr int kExitNotCertified = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDimensionMismatch = 3;
constexpr int kExitResource = 4;

int status_exit_code(makeev::CertStatus status) {
  switch (status) {
    case makeev::CertStatus::Certified: return kExitCertified;
    case makeev::CertStatus::NotCertified: return kExitNotCertified;
    case makeev::CertStatus::DimensionMismatch: return kExitDimensionMismatch;
  }
  return kExitUsage;
}

std::string quantity_name(long long m, int ell, int k, bool orthogonal) {
  std::ostringstream os;
  os << (orthogonal ? "Δ⊥" : "Δ") << '(' << m << ';' << ell << '/' << k << ')';
  return os.str();
}

void print_certificate(const makeev::CertificateResult& res) {
  std::cout << makeev::to_string(res.status) << " at d=" << res.d << '\n';
  std::cout << "dim(U) = " << res.dim_u << ", k*d = " << static_cast<long long>(res.k) * res.d
            << '\n';
  if (res.residual_support >= 0) {
    std::cout << "support(p_U) = " << res.residual_support << '\n';
    std::cout << "max degrees:";
    for (int md : res.max_degrees) std::cout << ' ' << md;
    std::cout << '\n';
  }
}

struct CertifyArgs {
  std::string spec_path;
  std::string theorem;
  int k = 0, q = 0, t = 0, d = 0;
  bool json_out = false;
};

int run_certify(const CertifyArgs& args) {
  makeev::CertificateResult res;
  if (!args.spec_path.empty()) {
    const makeev::SpecFile sf = makeev::parse_spec_file(makeev::load_json_file(args.spec_path));
    res = makeev::certify_full_monomial(sf.spec, sf.d);
  } else {
    const bool takes_d = args.theorem.rfind("prop5.4", 0) == 0;
    makeev::TheoremPreset preset{args.theorem, args.k, args.q, args.t, takes_d ? args.d : 0};
    const makeev::PresetExpansion exp = makeev::preset_spec(preset);
    const int target_d = (!takes_d && args.d > 0) ? args.d : exp.d;
    res = makeev::certify_full_monomial(exp.spec, target_d);
  }
  if (args.json_out)
    std::cout << makeev::certificate_json(res).dump(2) << '\n';
  else
    print_certificate(res);
  return status_exit_code(res.status);
}

struct SearchArgs {
  long long m = 1;
  int ell = 2, k = 2;
  std::string policy = "paper";
  int dmax = -1;
  bool json_out = false;
};

int run_search(const SearchArgs& args) {
  const makeev::SearchPolicy policy = makeev::parse_policy(args.policy);
  // default window: a modest band above the counting lower bound
  int dmax = args.dmax;
  if (dmax < 0) {
    makeev::SearchOutcome probe = makeev::minimal_certified_d(args.m, args.ell, args.k, policy, 0);
    dmax = static_cast<int>(probe.lower) + 24;
  }
  const makeev::SearchOutcome out =
      makeev::minimal_certified_d(args.m, args.ell, args.k, policy, dmax);
  if (args.json_out) {
    json attempts = json::array();
    for (const auto& a : out.attempts)
      attempts.push_back(json{{"d", a.d}, {"ran", a.ran}, {"note", a.note}});
    json j{{"m", args.m},     {"l", args.ell},      {"k", args.k},
           {"policy", args.policy}, {"d_lower", out.lower}, {"d_max", dmax},
           {"found", out.found},    {"attempts", std::move(attempts)}};
    if (out.found) {
      j["d"] = out.result.d;
      j["certificate"] = makeev::certificate_json(out.result);
    }
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "search m=" << args.m << " l=" << args.ell << " k=" << args.k
              << " policy=" << args.policy << " d in [" << out.lower << ".." << dmax << "]\n";
    for (const auto& a : out.attempts) std::cout << "  d=" << a.d << ": " << a.note << '\n';
    if (out.found) {
      std::cout << "minimal certified d = " << out.result.d << '\n';
      std::cout << makeev::spec_file_json(out.result.spec, out.result.d).dump(2) << '\n';
    } else {
      std::cout << "no certifying d in range\n";
    }
  }
  return out.found ? 0 : 1;
}

struct BoundsArgs {
  long long m = 1;
  int ell = 2, k = 2;
  bool ortho = false;
  bool json_out = false;
};

int run_bounds(const BoundsArgs& args) {
  const makeev::BoundReport rep = makeev::bound_report(args.m, args.ell, args.k, args.ortho);
  if (args.json_out) {
    std::cout << makeev::bound_report_json(rep).dump(2) << '\n';
    return 0;
  }
  std::cout << rep.lower << " ≤ " << quantity_name(rep.m, rep.ell, rep.k, rep.orthogonal)
            << " ≤ ";
  if (rep.upper)
    std::cout << *rep.upper << "\n(upper bound source: " << rep.upper_source << ")\n";
  else
    std::cout << "?\n(no upper bound known)\n";
  return 0;
}

struct TableRow {
  std::string family;
  makeev::TheoremPreset preset;
  long long m = 0;
  int ell = 0;
  bool orthogonal = false;
  long long lower = 0;
  int upper = 0;  // the preset dimension
  std::string status;
  bool passed = false;
  bool skipped = false;
};

int run_table(bool json_out) {
  std::vector<TableRow> rows;
  auto push_preset = [&rows](const std::string& family, int k, int q, int t, int ell,
                             bool orthogonal) {
    TableRow row;
    row.family = family;
    row.preset = {family, k, q, t, 0};
    row.ell = ell;
    row.orthogonal = orthogonal;
    rows.push_back(std::move(row));
  };
  for (int k = 2; k <= 5; ++k)
    for (int q = 0; q <= 2; ++q)
      for (int t = 1; t <= (1 << q); ++t) push_preset("thm3.1", k, q, t, 2, false);
  for (int k = 2; k <= 5; ++k)
    for (int q = 1; q <= 2; ++q)
      for (int t = 2; t <= (1 << q); ++t) push_preset("thm3.2", k, q, t, 2, true);
  for (int q = 0; q <= 3; ++q)
    for (int t = 1; t <= (1 << q); ++t) push_preset("thm4.1", 4, q, t, 3, false);
  for (int q = 1; q <= 3; ++q)
    for (int t = 2; t <= (1 << q); ++t) push_preset("thm4.2", 4, q, t, 3, true);
  push_preset("prop6.1a", 4, 0, 0, 3, true);
  push_preset("prop6.1b", 5, 0, 0, 3, true);

  makeev::parallel_for(rows.size(), [&rows](std::size_t i) {
    TableRow& row = rows[i];
    const makeev::PresetExpansion exp = makeev::preset_spec(row.preset);
    row.m = exp.m;
    row.upper = exp.d;
    row.lower = makeev::makeev_lower(exp.m, row.ell, exp.spec.k, row.orthogonal);
    try {
      const makeev::CertificateResult res = makeev::certify_full_monomial(exp.spec, exp.d);
      row.status = makeev::to_string(res.status);
      row.passed = res.status == makeev::CertStatus::Certified;
    } catch (const makeev::ResourceError&) {
      row.status = "skipped(resource)";
      row.skipped = true;
    }
  });

  bool all_ok = true;
  for (const TableRow& row : rows)
    if (!row.passed && !row.skipped) all_ok = false;

  if (json_out) {
    json jrows = json::array();
    for (const TableRow& row : rows) {
      jrows.push_back(json{{"family", row.family},
                           {"k", row.preset.k},
                           {"q", row.preset.q},
                           {"t", row.preset.t},
                           {"m", row.m},
                           {"l", row.ell},
                           {"orthogonal", row.orthogonal},
                           {"lower", row.lower},
                           {"upper", row.upper},
                           {"status", row.status}});
    }
    std::cout << json{{"rows", std::move(jrows)}, {"all_certified", all_ok}}.dump(2) << '\n';
  } else {
    // std::setw counts bytes, so pad the UTF-8 bracket column by glyph count
    auto pad_display = [](std::string s, std::size_t width) {
      std::size_t glyphs = 0;
      for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++glyphs;
      while (glyphs++ < width) s += ' ';
      return s;
    };
    std::cout << std::left << std::setw(10) << "family" << std::setw(4) << "k" << std::setw(4)
              << "q" << std::setw(4) << "t" << std::setw(6) << "m"
              << pad_display("bracket", 26) << "status\n";
    for (const TableRow& row : rows) {
      std::ostringstream bracket;
      bracket << row.lower << " ≤ "
              << quantity_name(row.m, row.ell, row.preset.k, row.orthogonal) << " ≤ "
              << row.upper;
      std::cout << std::left << std::setw(10) << row.family << std::setw(4) << row.preset.k
                << std::setw(4) << row.preset.q << std::setw(4) << row.preset.t << std::setw(6)
                << row.m << pad_display(bracket.str(), 26) << row.status << '\n';
    }
    std::cout << (all_ok ? "all certificates passed" : "CERTIFICATE FAILURES PRESENT") << '\n';
  }
  return all_ok ? 0 : 1;
}

struct VerifyArgs {
  std::string arrangement_path, masses_path;
  int ell = 1;
  bool ortho = false;
  double tol = 1e-9;
  double ortho_tol = 1e-9;
  bool json_out = false;
};

int run_verify(const VerifyArgs& args) {
  std::vector<std::string> warnings;
  const makeev::HyperplaneArrangement arr =
      makeev::parse_arrangement(makeev::load_json_file(args.arrangement_path), &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  const auto masses = makeev::parse_masses(makeev::load_json_file(args.masses_path));
  const makeev::FourierReport report = makeev::check_equipartition(arr, masses, args.ell, args.tol);
  bool ok = report.all_pass();
  std::vector<makeev::OrthogonalityCheck> ortho_checks;
  if (args.ortho) {
    ortho_checks = makeev::check_orthogonality(arr, args.ortho_tol);
    for (const auto& c : ortho_checks) ok = ok && c.ok;
  }
  if (args.json_out) {
    json j = makeev::fourier_report_json(report);
    if (args.ortho) {
      json jo = json::array();
      for (const auto& c : ortho_checks)
        jo.push_back(json{{"r", c.r}, {"s", c.s}, {"inner", c.inner}, {"pass", c.ok}});
      j["orthogonality"] = std::move(jo);
    }
    j["pass"] = ok;
    std::cout << j.dump(2) << '\n';
  } else {
    for (std::size_t i = 0; i < report.verdicts.size(); ++i) {
      std::cout << "mass " << (i + 1) << ": max |c_h| = " << std::scientific
                << std::setprecision(3) << report.max_residuals[i]
                << " (tol " << report.rel_tol * std::ldexp(report.totals[i], -report.k) << ") "
                << (report.verdicts[i] ? "PASS" : "FAIL") << '\n';
    }
    for (const auto& c : ortho_checks)
      std::cout << "orthogonality (" << c.r << ',' << c.s << "): <a_r,a_s> = " << std::scientific
                << std::setprecision(3) << c.inner << ' ' << (c.ok ? "PASS" : "FAIL") << '\n';
    std::cout << (ok ? "all checks passed" : "CHECKS FAILED") << '\n';
  }
  return ok ? 0 : 1;
}

struct SolveArgs {
  std::string masses_path, out_path;
  int k = 1, ell = 1;
  bool ortho = false;
  int restarts = 20;
  std::uint64_t seed = 0;
  double tol = 0.01;
  bool json_out = false;
};

int run_solve(const SolveArgs& args) {
  const auto masses = makeev::parse_masses(makeev::load_json_file(args.masses_path));
  makeev::SolveOptions opts;
  opts.restarts = args.restarts;
  opts.seed = args.seed;
  opts.orthogonal = args.ortho;
  const makeev::SolveResult res = makeev::solve_arrangement(masses, args.k, args.ell, opts);
  const bool ok =
      res.residual_rel <= args.tol && (!args.ortho || res.ortho_residual <= args.tol);
  if (!args.out_path.empty())
    makeev::save_json_file(args.out_path, makeev::arrangement_json(res.arrangement));
  if (args.json_out) {
    json j{{"residual_rel", res.residual_rel},
           {"residual_abs", res.residual_abs},
           {"best_restart", res.best_restart},
           {"pass", ok},
           {"arrangement", makeev::arrangement_json(res.arrangement)}};
    if (args.ortho) j["ortho_residual"] = res.ortho_residual;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "relative residual = " << std::scientific << std::setprecision(6)
              << res.residual_rel << " (tol " << args.tol << ", restart " << res.best_restart
              << ")\n";
    if (args.ortho)
      std::cout << "orthogonality residual = " << res.ortho_residual << '\n';
    if (!args.out_path.empty()) std::cout << "arrangement written to " << args.out_path << '\n';
    std::cout << (ok ? "PASS" : "FAIL") << '\n';
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("MAKEEV_CELL_LIMIT")) {
    try {
      makeev::set_cell_limit(std::stoull(env));
    } catch (const std::exception&) {
      std::cerr << "invalid MAKEEV_CELL_LIMIT value '" << env << "'\n";
      return kExitUsage;
    }
  }

  CLI::App app{"GF(2) certificates, bound tables, and numerical verification for "
               "l-of-k hyperplane mass equipartitions"};
  app.require_subcommand(1);

  CertifyArgs certify_args;
  CLI::App* certify = app.add_subcommand("certify", "run the full-monomial certificate test");
  auto* spec_opt = certify->add_option("--spec", certify_args.spec_path,
                                       "representation spec file (JSON)");
  auto* thm_opt = certify->add_option("--theorem", certify_args.theorem,
                                      "preset id (thm3.1, thm3.2, thm4.1, thm4.2, prop4.3, "
                                      "prop5.4a, prop5.4b, prop6.1a, prop6.1b)");
  certify->add_option("--k", certify_args.k, "number of hyperplanes (theorem presets)");
  certify->add_option("--q", certify_args.q, "power parameter q >= 0");
  certify->add_option("--t", certify_args.t, "offset parameter 1 <= t <= 2^q");
  certify->add_option("--d", certify_args.d,
                      "transversal parameter d (prop5.4*), or an override of the target "
                      "dimension for other presets");
  certify->add_flag("--json", certify_args.json_out, "emit a JSON report");
  spec_opt->excludes(thm_opt);
  thm_opt->excludes(spec_opt);

  SearchArgs search_args;
  CLI::App* search = app.add_subcommand("search", "find the minimal certifiable dimension");
  search->add_option("--m", search_args.m, "number of masses")->required();
  search->add_option("--l", search_args.ell, "subset size l")->required();
  search->add_option("--k", search_args.k, "number of hyperplanes")->required();
  search->add_option("--policy", search_args.policy,
                     "paper | bisection-pad | ortho-then-pad (default paper)");
  search->add_option("--dmax", search_args.dmax, "largest dimension to try");
  search->add_flag("--json", search_args.json_out, "emit a JSON report");

  BoundsArgs bounds_args;
  CLI::App* bounds = app.add_subcommand("bounds", "closed-form lower/upper bounds");
  bounds->add_option("--m", bounds_args.m, "number of masses")->required();
  bounds->add_option("--l", bounds_args.ell, "subset size l")->required();
  bounds->add_option("--k", bounds_args.k, "number of hyperplanes")->required();
  bounds->add_flag("--ortho", bounds_args.ortho, "pairwise orthogonal hyperplanes");
  bounds->add_flag("--json", bounds_args.json_out, "emit a JSON report");

  bool table_json = false;
  CLI::App* table = app.add_subcommand("table", "reproduce the bound table with live certificates");
  table->add_flag("--json", table_json, "emit a JSON report");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "check an arrangement against masses");
  verify->add_option("--arrangement", verify_args.arrangement_path, "arrangement file (JSON)")
      ->required();
  verify->add_option("--masses", verify_args.masses_path, "masses file (JSON)")->required();
  verify->add_option("--l", verify_args.ell, "subset size l")->required();
  verify->add_flag("--ortho", verify_args.ortho, "also require pairwise orthogonality");
  verify->add_option("--tol", verify_args.tol, "relative tolerance (default 1e-9)");
  verify->add_option("--ortho-tol", verify_args.ortho_tol,
                     "orthogonality tolerance (default 1e-9)");
  verify->add_flag("--json", verify_args.json_out, "emit a JSON report");

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "search for an equipartitioning arrangement");
  solve->add_option("--masses", solve_args.masses_path, "masses file (JSON)")->required();
  solve->add_option("--k", solve_args.k, "number of hyperplanes")->required();
  solve->add_option("--l", solve_args.ell, "subset size l")->required();
  solve->add_flag("--ortho", solve_args.ortho, "require pairwise orthogonality");
  solve->add_option("--restarts", solve_args.restarts, "random restarts (default 20)");
  solve->add_option("--seed", solve_args.seed, "RNG seed (default 0)");
  solve->add_option("--out", solve_args.out_path, "write the arrangement to this file");
  solve->add_option("--tol", solve_args.tol, "relative residual tolerance (default 0.01)");
  solve->add_flag("--json", solve_args.json_out, "emit a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (certify->parsed()) {
      if (certify_args.spec_path.empty() && certify_args.theorem.empty()) {
        std::cerr << "certify: exactly one of --spec/--theorem is required\n";
        return kExitUsage;
      }
      return run_certify(certify_args);
    }
    if (search->parsed()) return run_search(search_args);
    if (bounds->parsed()) return run_bounds(bounds_args);
    if (table->parsed()) return run_table(table_json);
    if (verify->parsed()) return run_verify(verify_args);
    if (solve->parsed()) return run_solve(solve_args);
  } catch (const makeev::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
