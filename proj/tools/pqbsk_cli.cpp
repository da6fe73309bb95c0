// Command-line front end: selftest, korovkin, moments, bounds, figure.
//
// Exit codes: 0 all checks pass, 1 a bound/convergence check failed,
// 2 configuration error, 3 numerical infeasibility (truncation cap).

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pqbsk/error_bounds.hpp"
#include "pqbsk/errors.hpp"
#include "pqbsk/experiments.hpp"
#include "pqbsk/moments.hpp"

namespace {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kConfigError = 2, kInfeasible = 3 };

struct SharedFlags {
  std::string n = "20";
  int ell = 0;
  std::optional<double> p;
  std::optional<double> q;
  std::string schedule = "classic";
  int grid = 101;
  std::optional<double> tol;
  std::string basis = "normalized";
  std::string out;
  std::string format = "csv";
};

void add_shared(CLI::App& cmd, SharedFlags& f) {
  cmd.add_option("--n", f.n, "Degree n, or a comma-separated increasing list")->capture_default_str();
  cmd.add_option("--ell", f.ell, "Schurer shift")->capture_default_str()->check(CLI::NonNegativeNumber);
  cmd.add_option("--p", f.p, "Parameter p (fixed pair)");
  cmd.add_option("--q", f.q, "Parameter q (fixed pair)");
  cmd.add_option("--schedule", f.schedule, "Korovkin schedule: classic | q-only | custom")
      ->capture_default_str();
  cmd.add_option("--grid", f.grid, "Number of x grid points on [0,1]")->capture_default_str();
  cmd.add_option("--tol", f.tol, "Quadrature truncation tolerance");
  cmd.add_option("--basis", f.basis, "Basis variant: printed | normalized")->capture_default_str();
  cmd.add_option("--out", f.out, "Output file (stdout when omitted)");
  cmd.add_option("--format", f.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto pos = s.find(',', start);
    const std::string item = s.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || ptr != item.data() + item.size()) {
      throw pqbsk::ConfigError("cannot parse integer list '" + s + "'");
    }
    out.push_back(v);
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(',', start);
    const std::string item = s.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw pqbsk::ConfigError("cannot parse number list '" + s + "'");
    }
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

int single_n(const SharedFlags& f) {
  const auto ns = parse_int_list(f.n);
  if (ns.size() != 1) throw pqbsk::ConfigError("this subcommand takes a single --n");
  return ns.front();
}

pqbsk::PQPair fixed_pair(const SharedFlags& f) {
  if (!f.p || !f.q) throw pqbsk::ConfigError("--p and --q are required");
  return {*f.p, *f.q};
}

pqbsk::SchurerConfig make_config(const SharedFlags& f, int n) {
  pqbsk::SchurerConfig config{n, f.ell, pqbsk::basis_variant_from_string(f.basis),
                              f.tol.value_or(pqbsk::kOperatorQuadTol)};
  config.validate();
  return config;
}

void emit(const SharedFlags& f, const std::string& csv, const std::string& json) {
  const std::string& body = f.format == "json" ? json : csv;
  if (f.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream file(f.out, std::ios::binary | std::ios::trunc);
  if (!file) throw pqbsk::ConfigError("cannot open output file '" + f.out + "'");
  file << body;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"(p,q)-Bernstein-Schurer-Kantorovich operator toolkit"};
  app.require_subcommand(1);

  SharedFlags selftest_flags, korovkin_flags, moments_flags, bounds_flags, figure_flags;

  auto* selftest = app.add_subcommand("selftest", "Quadrature, partition-of-unity and p=1 checks");
  add_shared(*selftest, selftest_flags);

  auto* korovkin = app.add_subcommand("korovkin", "Sup-norm convergence along a (p_n,q_n) schedule");
  add_shared(*korovkin, korovkin_flags);
  korovkin_flags.n = "8,16,32,64,128";
  std::string custom_p, custom_q, functions = "e0,e1,e2,f_fig";
  double guard = 0.01;
  korovkin->add_option("--p-seq", custom_p, "Custom schedule p_n values (comma list)");
  korovkin->add_option("--q-seq", custom_q, "Custom schedule q_n values (comma list)");
  korovkin->add_option("--functions", functions, "Test functions")->capture_default_str();
  korovkin->add_option("--guard", guard, "Require 1-p_n, 1-q_n below this at the largest n")
      ->capture_default_str();

  auto* moments = app.add_subcommand("moments", "Closed-form vs operator moment report");
  add_shared(*moments, moments_flags);

  auto* bounds = app.add_subcommand("bounds", "Empirical check of an error bound");
  add_shared(*bounds, bounds_flags);
  std::string theorem = "t32", function = "f_fig";
  double lip_m = 1.0, lip_alpha = 1.0, cap = pqbsk::kDefaultRatioCap, modulus_step = 0.0;
  bounds->add_option("--theorem", theorem, "t32 | t33 | t34")->capture_default_str();
  bounds->add_option("--function", function, "e0 | e1 | e2 | f_fig | lip_x | lip_sqrt")
      ->capture_default_str();
  bounds->add_option("--M", lip_m, "Lipschitz constant (t33)")->capture_default_str();
  bounds->add_option("--alpha", lip_alpha, "Lipschitz exponent (t33)")->capture_default_str();
  bounds->add_option("--cap", cap, "Ratio cap (t34)")->capture_default_str();
  bounds->add_option("--modulus-step", modulus_step, "Modulus grid step (0: length/2000)");
  std::string alpha_source = "closed";
  bounds->add_option("--alpha-source", alpha_source, "alpha_n for t34: closed | operator")
      ->capture_default_str();

  auto* figure = app.add_subcommand("figure", "Operator values for f(x)=1+cos(5x^2)");
  add_shared(*figure, figure_flags);
  std::string figure_params;
  figure->add_option("--params", figure_params, "p:q:n,p:q:n,... (defaults when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (*selftest) {
      pqbsk::SelftestOptions opts;
      opts.basis_variant = pqbsk::basis_variant_from_string(selftest_flags.basis);
      if (selftest_flags.tol) opts.tol = *selftest_flags.tol;
      const auto checks = pqbsk::run_selftest(opts);
      bool ok = true;
      for (const auto& c : checks) {
        std::cerr << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  max deviation "
                  << c.max_deviation << " (tol " << c.tolerance << ")\n";
        ok = ok && c.pass;
      }
      nlohmann::ordered_json doc;
      doc["schema_version"] = "1";
      doc["report"] = "selftest";
      for (const auto& c : checks) {
        doc["checks"].push_back({{"name", c.name},
                                 {"pass", c.pass},
                                 {"max_deviation", c.max_deviation},
                                 {"tolerance", c.tolerance}});
      }
      emit(selftest_flags, pqbsk::to_csv(checks), doc.dump(2) + "\n");
      return ok ? kOk : kCheckFailed;
    }

    if (*korovkin) {
      const auto& f = korovkin_flags;
      const auto ns = parse_int_list(f.n);
      pqbsk::KorovkinSchedule schedule = pqbsk::KorovkinSchedule::classic();
      if (f.schedule == "custom") {
        schedule = pqbsk::KorovkinSchedule::custom(ns, parse_double_list(custom_p),
                                                   parse_double_list(custom_q));
      } else {
        schedule = pqbsk::KorovkinSchedule::from_name(f.schedule);
      }
      pqbsk::KorovkinOptions opts;
      opts.ell = f.ell;
      opts.grid_points = f.grid;
      opts.quad_tol = f.tol.value_or(pqbsk::kOperatorQuadTol);
      opts.basis_variant = pqbsk::basis_variant_from_string(f.basis);
      opts.guard = guard;
      opts.functions.clear();
      for (auto& name : CLI::detail::split(functions, ',')) opts.functions.push_back(name);
      const auto table = pqbsk::run_korovkin(schedule, ns, opts);
      emit(f, pqbsk::to_csv(table), pqbsk::to_json(table));
      return table.all_decreasing() ? kOk : kCheckFailed;
    }

    if (*moments) {
      const auto& f = moments_flags;
      const auto config = make_config(f, single_n(f));
      const auto report = pqbsk::build_moment_report(config, fixed_pair(f), pqbsk::uniform_grid(f.grid));
      emit(f, pqbsk::to_csv(report), pqbsk::to_json(report));
      const auto violations = report.consistency_violations();
      for (const auto& v : violations) std::cerr << "consistency: " << v << "\n";
      if (report.discrepancy) {
        std::cerr << "note: closed forms differ from the operator by up to " << report.max_abs_diff
                  << "\n";
      }
      return violations.empty() ? kOk : kCheckFailed;
    }

    if (*bounds) {
      const auto& f = bounds_flags;
      const auto config = make_config(f, single_n(f));
      const auto pq = fixed_pair(f);
      const auto grid = pqbsk::uniform_grid(f.grid);
      const auto fn = pqbsk::builtin_function(
          function, pqbsk::hull({0.0, 1.0}, pqbsk::required_domain(config, pq)));
      pqbsk::BoundOptions opts{modulus_step, cap, pqbsk::alpha_source_from_string(alpha_source)};
      pqbsk::BoundReport report;
      switch (pqbsk::bound_theorem_from_string(theorem)) {
        case pqbsk::BoundTheorem::FirstModulus:
          report = pqbsk::check_t32(config, pq, fn, grid, opts);
          break;
        case pqbsk::BoundTheorem::Lipschitz:
          report = pqbsk::check_t33(config, pq, fn, lip_m, lip_alpha, grid, opts);
          break;
        case pqbsk::BoundTheorem::KFunctional:
          // alpha_n may leave [0, D]; widen the declared domain to cover it.
          report = pqbsk::check_t34(config, pq, fn.with_domain({-1e6, 1e6}), grid, opts);
          break;
      }
      emit(f, pqbsk::to_csv(report), pqbsk::to_json(report));
      for (const auto& v : report.violations) std::cerr << "violation: " << v << "\n";
      return report.passed() ? kOk : kCheckFailed;
    }

    if (*figure) {
      const auto& f = figure_flags;
      const auto params =
          figure_params.empty() ? pqbsk::default_figure_params() : pqbsk::parse_figure_params(figure_params);
      pqbsk::FigureOptions opts;
      opts.ell = f.ell;
      opts.grid_points = f.grid;
      opts.quad_tol = f.tol.value_or(pqbsk::kOperatorQuadTol);
      opts.basis_variant = pqbsk::basis_variant_from_string(f.basis);
      const auto data = pqbsk::run_figure(params, opts);
      emit(f, pqbsk::to_csv(data), pqbsk::to_json(data, params, opts));
      return kOk;
    }
  } catch (const pqbsk::TruncationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const pqbsk::NotLipschitzError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kOk;
}
