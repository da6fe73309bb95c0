#include "pqbsk/error_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"

#include "pqbsk/errors.hpp"
#include "pqbsk/moments.hpp"
#include "pqbsk/report_format.hpp"

namespace pqbsk {

ModulusTable::ModulusTable(const RealFunction& f, double grid_step) : domain_(f.domain()) {
  if (!(grid_step > 0.0)) throw ConfigError("ModulusTable: grid_step must be positive");
  const double length = domain_.length();
  // Round the step so the grid lands exactly on both ends of the domain.
  const auto cells = static_cast<std::size_t>(std::max(1.0, std::round(length / grid_step)));
  step_ = length > 0.0 ? length / static_cast<double>(cells) : grid_step;

  std::vector<double> values(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) {
    const double x = i == cells ? domain_.hi : domain_.lo + static_cast<double>(i) * step_;
    values[i] = f(x);
    sup_abs_ = std::max(sup_abs_, std::abs(values[i]));
  }

  first_.assign(cells + 1, 0.0);
  for (std::size_t m = 1; m <= cells; ++m) {
    double best = first_[m - 1];
    for (std::size_t i = 0; i + m <= cells; ++i) {
      best = std::max(best, std::abs(values[i + m] - values[i]));
    }
    first_[m] = best;
  }

  second_.assign(cells / 2 + 1, 0.0);
  for (std::size_t m = 1; 2 * m <= cells; ++m) {
    double best = second_[m - 1];
    for (std::size_t i = 0; i + 2 * m <= cells; ++i) {
      best = std::max(best, std::abs(values[i + 2 * m] - 2.0 * values[i + m] + values[i]));
    }
    second_[m] = best;
  }
}

double ModulusTable::interpolate(const std::vector<double>& table, double delta) const {
  if (!(delta > 0.0)) return 0.0;
  const double shifts = delta / step_ * (1.0 + 1e-12);
  const auto last = table.size() - 1;
  if (shifts >= static_cast<double>(last)) return table[last];
  const auto m = static_cast<std::size_t>(shifts);
  const double frac = std::min(1.0, shifts - static_cast<double>(m));
  return table[m] + frac * (table[m + 1] - table[m]);
}

double ModulusTable::omega(double delta) const { return interpolate(first_, delta); }

double ModulusTable::omega2(double delta) const { return interpolate(second_, delta); }

double modulus(const RealFunction& f, double delta, double grid_step) {
  return ModulusTable(f, grid_step).omega(delta);
}

double modulus2(const RealFunction& f, double delta, double grid_step) {
  return ModulusTable(f, grid_step).omega2(delta);
}

double delta_n(const SchurerConfig& config, const PQPair& pq, double x) {
  return std::max(0.0, apply_central_moment(config, pq, x, 2));
}

double alpha_n(const SchurerConfig& config, const PQPair& pq, double x) {
  return closed_first_moment(config, pq, x);
}

void verify_lipschitz(const RealFunction& f, double M, double alpha, const Interval& on,
                      int samples) {
  if (!(M > 0.0) || !(alpha > 0.0 && alpha <= 1.0)) {
    throw ConfigError("Lipschitz data requires M > 0 and alpha in (0,1]");
  }
  if (samples < 2) throw ConfigError("verify_lipschitz: need at least 2 samples");
  std::vector<double> xs(static_cast<std::size_t>(samples));
  std::vector<double> fx(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = on.lo + on.length() * static_cast<double>(i) / static_cast<double>(samples - 1);
    fx[i] = f(xs[i]);
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const double allowed = M * std::pow(xs[j] - xs[i], alpha);
      if (std::abs(fx[j] - fx[i]) > allowed * (1.0 + 1e-12) + 1e-14) {
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "not Lipschitz at sampled pairs: |f(%.6g) - f(%.6g)| = %.6g > %.6g", xs[j],
                      xs[i], std::abs(fx[j] - fx[i]), allowed);
        throw NotLipschitzError(f.name() + ": " + buf);
      }
    }
  }
}

std::string_view to_string(BoundTheorem t) {
  switch (t) {
    case BoundTheorem::FirstModulus:
      return "t32";
    case BoundTheorem::Lipschitz:
      return "t33";
    case BoundTheorem::KFunctional:
      return "t34";
  }
  return "unknown";
}

BoundTheorem bound_theorem_from_string(std::string_view s) {
  if (s == "t32") return BoundTheorem::FirstModulus;
  if (s == "t33") return BoundTheorem::Lipschitz;
  if (s == "t34") return BoundTheorem::KFunctional;
  throw ConfigError("unknown theorem '" + std::string(s) + "' (expected t32|t33|t34)");
}

std::string_view to_string(AlphaSource s) {
  return s == AlphaSource::ClosedForm ? "closed" : "operator";
}

AlphaSource alpha_source_from_string(std::string_view s) {
  if (s == "closed") return AlphaSource::ClosedForm;
  if (s == "operator") return AlphaSource::Operator;
  throw ConfigError("unknown alpha source '" + std::string(s) + "' (expected closed|operator)");
}

double BoundReport::max_error() const {
  double m = 0.0;
  for (const auto& r : rows) m = std::max(m, r.error);
  return m;
}

double BoundReport::max_ratio() const {
  double m = 0.0;
  for (const auto& r : rows) {
    if (!std::isnan(r.ratio_t34)) m = std::max(m, r.ratio_t34);
  }
  return m;
}

double tolerance_budget(const SchurerConfig& config, const ModulusTable& table) {
  const double quadrature = (config.degree() + 1) * config.quad_tol * std::max(1.0, table.sup_abs());
  return quadrature + table.omega(table.step());
}

Interval bound_domain(const KantorovichOperator& op) {
  return hull({0.0, 1.0}, op.required_domain());
}

namespace {

struct Prepared {
  KantorovichOperator op;
  RealFunction f;
  ModulusTable table;
  std::vector<double> cells;
  double slack;
};

Prepared prepare(const SchurerConfig& config, const PQPair& pq, const RealFunction& f,
                 const Interval& extra, const BoundOptions& options) {
  KantorovichOperator op(config, pq);
  const Interval dom = hull(bound_domain(op), extra);
  RealFunction local = f.restricted(dom);
  const double step =
      options.grid_step > 0.0 ? options.grid_step : dom.length() / kModulusGridDivisions;
  ModulusTable table(local, step);
  auto cells = op.cell_integrals(local);
  const double slack = 10.0 * tolerance_budget(config, table);
  return {std::move(op), std::move(local), std::move(table), std::move(cells), slack};
}

BoundReport report_header(BoundTheorem theorem, const SchurerConfig& config, const PQPair& pq,
                          const Prepared& prep, const BoundOptions& options) {
  BoundReport report;
  report.theorem = theorem;
  report.config = config;
  report.pq = pq;
  report.function_name = prep.f.name();
  report.grid_step = prep.table.step();
  report.slack = prep.slack;
  report.ratio_cap = options.ratio_cap;
  report.alpha_source = options.alpha_source;
  return report;
}

void fill_error(BoundRow& row, const Prepared& prep, double x) {
  row.x = x;
  row.error = std::abs(prep.op.combine(prep.cells, x) - prep.f(x));
  row.delta_n = std::max(0.0, prep.op.central_moment(x, 2));
}

std::string describe_row(const BoundRow& r, const char* what, double lhs, double rhs) {
  char buf[200];
  std::snprintf(buf, sizeof buf, "x=%.17g: %s (%.6e vs %.6e)", r.x, what, lhs, rhs);
  return buf;
}

}  // namespace

BoundReport check_t32(const SchurerConfig& config, const PQPair& pq, const RealFunction& f,
                      const std::vector<double>& grid, BoundOptions options) {
  const auto prep = prepare(config, pq, f, {0.0, 1.0}, options);
  auto report = report_header(BoundTheorem::FirstModulus, config, pq, prep, options);
  for (double x : grid) {
    BoundRow row;
    fill_error(row, prep, x);
    row.bound_t32 = 2.0 * prep.table.omega(std::sqrt(row.delta_n));
    row.pass = row.error <= row.bound_t32 + report.slack;
    if (!row.pass) {
      report.violations.push_back(describe_row(row, "error exceeds 2*w(f, sqrt(delta_n))",
                                               row.error, row.bound_t32 + report.slack));
    }
    report.rows.push_back(row);
  }
  return report;
}

BoundReport check_t33(const SchurerConfig& config, const PQPair& pq, const RealFunction& f,
                      double M, double alpha, const std::vector<double>& grid,
                      BoundOptions options) {
  const auto prep = prepare(config, pq, f, {0.0, 1.0}, options);
  verify_lipschitz(prep.f, M, alpha, prep.f.domain());
  auto report = report_header(BoundTheorem::Lipschitz, config, pq, prep, options);
  report.lipschitz_m = M;
  report.lipschitz_alpha = alpha;
  for (double x : grid) {
    BoundRow row;
    fill_error(row, prep, x);
    row.bound_t33 = M * std::pow(row.delta_n, alpha / 2.0);
    row.pass = row.error <= row.bound_t33 + report.slack;
    if (!row.pass) {
      report.violations.push_back(describe_row(row, "error exceeds M*delta_n^(alpha/2)",
                                               row.error, row.bound_t33 + report.slack));
    }
    report.rows.push_back(row);
  }
  return report;
}

BoundReport check_t34(const SchurerConfig& config, const PQPair& pq, const RealFunction& f,
                      const std::vector<double>& grid, BoundOptions options) {
  const KantorovichOperator op(config, pq);
  std::vector<double> oracle_m1;
  {
    const RealFunction e1([](double t) { return t; }, op.required_domain(), "t");
    oracle_m1 = op.apply(e1, grid);
  }
  Interval alpha_range{0.0, 1.0};
  std::vector<double> alphas;
  alphas.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    alphas.push_back(options.alpha_source == AlphaSource::ClosedForm
                         ? alpha_n(config, pq, grid[i])
                         : oracle_m1[i]);
    alpha_range = hull(alpha_range, {alphas.back(), alphas.back()});
  }
  const auto prep = prepare(config, pq, f, alpha_range, options);
  auto report = report_header(BoundTheorem::KFunctional, config, pq, prep, options);

  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    BoundRow row;
    fill_error(row, prep, x);
    row.alpha_n = alphas[i];
    row.oracle_m1 = oracle_m1[i];
    row.c_n = std::abs(row.alpha_n - x);
    row.a_n = row.delta_n + row.c_n * row.c_n;
    row.omega2_term = prep.table.omega2(std::sqrt(row.a_n));
    row.omega_term = prep.table.omega(row.c_n);
    const double denom = row.omega2_term + row.omega_term;
    // An error inside the numerical budget leaves nothing for the bound to explain.
    const bool negligible = row.error <= report.slack;
    if (denom > 0.0) {
      row.ratio_t34 = row.error / denom;
    } else {
      row.ratio_t34 = negligible ? 0.0 : std::numeric_limits<double>::infinity();
    }
    row.pass = negligible || (std::isfinite(row.ratio_t34) && row.ratio_t34 <= report.ratio_cap);
    if (!std::isfinite(row.ratio_t34)) {
      report.violations.push_back(
          describe_row(row, "degenerate ratio: both modulus terms vanish", row.error, report.slack));
    } else if (!row.pass) {
      report.violations.push_back(
          describe_row(row, "ratio exceeds cap", row.ratio_t34, report.ratio_cap));
    }
    report.rows.push_back(row);
  }
  return report;
}

std::string to_csv(const BoundReport& report) {
  CsvWriter csv({"x", "error", "delta_n", "bound_t32", "bound_t33", "alpha_n", "a_n", "c_n",
                 "omega2_term", "omega_term", "ratio_t34", "pass"});
  for (const auto& r : report.rows) {
    csv.raw_row({format_double(r.x), format_double(r.error), format_double(r.delta_n),
                 format_double(r.bound_t32), format_double(r.bound_t33), format_double(r.alpha_n),
                 format_double(r.a_n), format_double(r.c_n), format_double(r.omega2_term),
                 format_double(r.omega_term), format_double(r.ratio_t34), r.pass ? "1" : "0"});
  }
  return csv.str();
}

namespace {

nlohmann::ordered_json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

std::string to_json(const BoundReport& report) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = "1";
  doc["report"] = "bounds";
  doc["theorem"] = std::string(to_string(report.theorem));
  doc["function"] = report.function_name;
  doc["config"] = config_json(report.config);
  doc["pq"] = {{"p", report.pq.p()}, {"q", report.pq.q()}};
  doc["tolerances"] = {{"quad_tol", report.config.quad_tol},
                       {"modulus_grid_step", report.grid_step},
                       {"slack", report.slack}};
  if (report.lipschitz_m) doc["lipschitz"] = {{"M", *report.lipschitz_m}, {"alpha", *report.lipschitz_alpha}};
  if (report.theorem == BoundTheorem::KFunctional) {
    doc["ratio_cap"] = report.ratio_cap;
    doc["alpha_source"] = std::string(to_string(report.alpha_source));
    doc["interpretation"] = kRisingPowerInterpretation;
  }
  doc["summary"] = {{"passed", report.passed()},
                    {"max_error", report.max_error()},
                    {"max_ratio_t34", report.max_ratio()}};
  doc["violations"] = report.violations;
  auto& rows = doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"x", r.x},
                    {"error", r.error},
                    {"delta_n", r.delta_n},
                    {"bound_t32", number_or_null(r.bound_t32)},
                    {"bound_t33", number_or_null(r.bound_t33)},
                    {"alpha_n", number_or_null(r.alpha_n)},
                    {"oracle_m1", number_or_null(r.oracle_m1)},
                    {"a_n", number_or_null(r.a_n)},
                    {"c_n", number_or_null(r.c_n)},
                    {"omega2_term", number_or_null(r.omega2_term)},
                    {"omega_term", number_or_null(r.omega_term)},
                    {"ratio_t34", number_or_null(r.ratio_t34)},
                    {"pass", r.pass}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace pqbsk
