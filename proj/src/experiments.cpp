#include "pqbsk/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>

#include "json.hpp"

#include "pqbsk/errors.hpp"
#include "pqbsk/quadrature.hpp"
#include "pqbsk/reference.hpp"
#include "pqbsk/report_format.hpp"

namespace pqbsk {

std::vector<double> uniform_grid(int points, double lo, double hi) {
  if (points < 2) throw ConfigError("grid size must be >= 2, got " + std::to_string(points));
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
  }
  grid.back() = hi;
  return grid;
}

RealFunction builtin_function(std::string_view selector, const Interval& domain) {
  if (selector == "e0") return {[](double) { return 1.0; }, domain, "e0"};
  if (selector == "e1") return {[](double t) { return t; }, domain, "e1"};
  if (selector == "e2") return {[](double t) { return t * t; }, domain, "e2"};
  if (selector == "f_fig") {
    return {[](double t) { return 1.0 + std::cos(5.0 * t * t); }, domain, "f_fig"};
  }
  if (selector == "lip_x") return {[](double t) { return t; }, domain, "lip_x"};
  if (selector == "lip_sqrt") {
    return {[](double t) { return std::sqrt(std::abs(t - 0.5)); }, domain, "lip_sqrt"};
  }
  throw ConfigError("unknown function '" + std::string(selector) + "'");
}

std::vector<std::string> builtin_function_names() {
  return {"e0", "e1", "e2", "f_fig", "lip_x", "lip_sqrt"};
}

KorovkinSchedule KorovkinSchedule::classic() { return {}; }

KorovkinSchedule KorovkinSchedule::q_only() {
  KorovkinSchedule s;
  s.kind_ = Kind::QOnly;
  return s;
}

KorovkinSchedule KorovkinSchedule::custom(std::vector<int> ns, std::vector<double> ps,
                                          std::vector<double> qs) {
  if (ns.size() != ps.size() || ns.size() != qs.size() || ns.empty()) {
    throw ConfigError("custom schedule: n, p and q sequences must be non-empty and equal length");
  }
  KorovkinSchedule s;
  s.kind_ = Kind::Custom;
  s.ns_ = std::move(ns);
  s.ps_ = std::move(ps);
  s.qs_ = std::move(qs);
  return s;
}

KorovkinSchedule KorovkinSchedule::from_name(std::string_view name) {
  if (name == "classic") return classic();
  if (name == "q-only") return q_only();
  throw ConfigError("unknown schedule '" + std::string(name) + "' (expected classic|q-only)");
}

std::string KorovkinSchedule::name() const {
  switch (kind_) {
    case Kind::Classic:
      return "classic";
    case Kind::QOnly:
      return "q-only";
    case Kind::Custom:
      return "custom";
  }
  return "unknown";
}

PQPair KorovkinSchedule::at(int n) const {
  switch (kind_) {
    case Kind::Classic:
      return {1.0 - 1.0 / (2.0 * (n + 1)), 1.0 - 1.0 / (n + 1)};
    case Kind::QOnly:
      return {1.0, 1.0 - 1.0 / (n + 1)};
    case Kind::Custom:
      break;
  }
  const auto it = std::find(ns_.begin(), ns_.end(), n);
  if (it == ns_.end()) throw ConfigError("custom schedule has no entry for n=" + std::to_string(n));
  const auto i = static_cast<std::size_t>(it - ns_.begin());
  return {ps_[i], qs_[i]};
}

void KorovkinSchedule::validate(const std::vector<int>& n_list, double guard) const {
  if (n_list.empty()) throw ConfigError("schedule: empty n list");
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] <= n_list[i - 1]) throw ConfigError("schedule: n list must be strictly increasing");
  }
  double prev_p = 0.0;
  double prev_q = 0.0;
  for (int n : n_list) {
    const PQPair pq = at(n);  // throws on q_n >= p_n or p_n > 1
    if (kind_ == Kind::Custom && (pq.p() < prev_p || pq.q() < prev_q)) {
      throw ConfigError("custom schedule: p_n and q_n must be non-decreasing");
    }
    prev_p = pq.p();
    prev_q = pq.q();
  }
  const PQPair last = at(n_list.back());
  if (1.0 - last.p() >= guard || 1.0 - last.q() >= guard) {
    throw ConfigError("schedule: at n=" + std::to_string(n_list.back()) +
                      " (p,q) is not within the convergence guard of 1");
  }
}

std::vector<KorovkinRow> KorovkinTable::for_function(std::string_view name) const {
  std::vector<KorovkinRow> out;
  for (const auto& r : rows) {
    if (r.function == name) out.push_back(r);
  }
  return out;
}

bool KorovkinTable::all_decreasing() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const KorovkinRow& r) { return r.function == "e0" || r.decreasing; });
}

KorovkinTable run_korovkin(const KorovkinSchedule& schedule, const std::vector<int>& n_list,
                           const KorovkinOptions& options) {
  schedule.validate(n_list, options.guard);
  const auto grid = uniform_grid(options.grid_points);

  KorovkinTable table;
  table.schedule = schedule.name();
  table.ell = options.ell;
  table.basis_variant = options.basis_variant;
  table.quad_tol = options.quad_tol;
  table.grid_points = options.grid_points;

  std::vector<double> previous(options.functions.size(), std::numeric_limits<double>::infinity());
  for (int n : n_list) {
    const PQPair pq = schedule.at(n);
    const KantorovichOperator op({n, options.ell, options.basis_variant, options.quad_tol}, pq);
    for (std::size_t i = 0; i < options.functions.size(); ++i) {
      const auto f = builtin_function(options.functions[i], op.required_domain());
      const auto values = op.apply(f, grid);
      double sup = 0.0;
      for (std::size_t j = 0; j < grid.size(); ++j) sup = std::max(sup, std::abs(values[j] - f(grid[j])));
      table.rows.push_back({n, pq.p(), pq.q(), options.functions[i], sup, sup < previous[i]});
      previous[i] = sup;
    }
  }
  return table;
}

std::string to_csv(const KorovkinTable& table) {
  CsvWriter csv({"n", "p", "q", "function", "sup_error", "decreasing"});
  for (const auto& r : table.rows) {
    csv.raw_row({std::to_string(r.n), format_double(r.p), format_double(r.q), r.function,
                 format_double(r.sup_error), r.decreasing ? "1" : "0"});
  }
  return csv.str();
}

std::string to_json(const KorovkinTable& table) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = "1";
  doc["report"] = "korovkin";
  doc["schedule"] = table.schedule;
  doc["ell"] = table.ell;
  doc["basis_variant"] = std::string(to_string(table.basis_variant));
  doc["quad_tol"] = table.quad_tol;
  doc["grid_points"] = table.grid_points;
  doc["all_decreasing"] = table.all_decreasing();
  auto& rows = doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"n", r.n},
                    {"p", r.p},
                    {"q", r.q},
                    {"function", r.function},
                    {"sup_error", r.sup_error},
                    {"decreasing", r.decreasing}});
  }
  return doc.dump(2) + "\n";
}

std::vector<FigureParams> default_figure_params() {
  return {{0.95, 0.90, 10}, {0.98, 0.95, 30}, {0.999, 0.99, 100}};
}

namespace {

double parse_number(std::string_view s, std::string_view context) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError("cannot parse '" + std::string(s) + "' in " + std::string(context));
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string column_label(const FigureParams& fp) {
  return "K_p" + format_double(fp.p) + "_q" + format_double(fp.q) + "_n" + std::to_string(fp.n);
}

}  // namespace

std::vector<FigureParams> parse_figure_params(std::string_view spec) {
  std::vector<FigureParams> out;
  for (auto triple : split(spec, ',')) {
    const auto fields = split(triple, ':');
    if (fields.size() != 3) {
      throw ConfigError("figure parameter '" + std::string(triple) + "' must be p:q:n");
    }
    const double n = parse_number(fields[2], "figure n");
    if (n != std::floor(n) || n < 1) throw ConfigError("figure n must be a positive integer");
    const PQPair pq(parse_number(fields[0], "figure p"), parse_number(fields[1], "figure q"));
    out.push_back({pq.p(), pq.q(), static_cast<int>(n)});
  }
  if (out.empty()) throw ConfigError("figure: at least one (p,q,n) triple is required");
  return out;
}

FigureData run_figure(const std::vector<FigureParams>& params, const FigureOptions& options) {
  if (params.empty()) throw ConfigError("figure: at least one (p,q,n) triple is required");
  const auto grid = uniform_grid(options.grid_points);

  FigureData data;
  data.columns = {"x", "f(x)"};
  std::vector<std::vector<double>> columns;
  for (const auto& fp : params) {
    const KantorovichOperator op({fp.n, options.ell, options.basis_variant, options.quad_tol},
                                 PQPair(fp.p, fp.q));
    const auto f = builtin_function("f_fig", op.required_domain());
    columns.push_back(op.apply(f, grid));
    data.columns.push_back(column_label(fp));
  }
  const auto f = builtin_function("f_fig", {0.0, 1.0});
  for (std::size_t j = 0; j < grid.size(); ++j) {
    std::vector<double> row{grid[j], f(grid[j])};
    for (const auto& c : columns) row.push_back(c[j]);
    data.rows.push_back(std::move(row));
  }
  return data;
}

std::string to_csv(const FigureData& data) {
  CsvWriter csv(data.columns);
  for (const auto& r : data.rows) csv.row(r);
  return csv.str();
}

std::string to_json(const FigureData& data, const std::vector<FigureParams>& params,
                    const FigureOptions& options) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = "1";
  doc["report"] = "figure";
  doc["function"] = "1+cos(5x^2)";
  doc["ell"] = options.ell;
  doc["basis_variant"] = std::string(to_string(options.basis_variant));
  doc["quad_tol"] = options.quad_tol;
  auto& ps = doc["params"] = nlohmann::ordered_json::array();
  for (const auto& fp : params) ps.push_back({{"p", fp.p}, {"q", fp.q}, {"n", fp.n}});
  doc["columns"] = data.columns;
  doc["rows"] = data.rows;
  return doc.dump(2) + "\n";
}

namespace {

SelftestCheck quadrature_suite(double tol) {
  SelftestCheck check{"quadrature monomials 1/[m+1]", true, 0.0, 1e-11};
  for (const auto& [p, q] : {std::pair{1.0, 0.5}, {0.9, 0.8}, {0.99, 0.98}}) {
    const PQPair pq(p, q);
    const auto rule = build_rule(pq, 1.0, tol);
    for (int m = 0; m <= 6; ++m) {
      const double got = rule.sum([m](double t) { return std::pow(t, m); });
      check.max_deviation = std::max(check.max_deviation, std::abs(got - 1.0 / pq_integer(m + 1, pq)));
    }
  }
  check.pass = check.max_deviation <= check.tolerance;
  return check;
}

SelftestCheck partition_suite(BasisVariant variant) {
  SelftestCheck check{"partition of unity (" + std::string(to_string(variant)) + ")", true, 0.0,
                      1e-12};
  const auto grid = uniform_grid(101);
  for (const auto& [p, q] : {std::pair{0.9, 0.8}, {0.99, 0.98}, {1.0, 0.5}}) {
    for (int big_n = 1; big_n <= 64; ++big_n) {
      const KantorovichOperator op({big_n, 0, variant, 1e-6}, PQPair(p, q));
      for (double x : grid) {
        double total = 0.0;
        for (double b : op.basis_values(x)) total += b;
        check.max_deviation = std::max(check.max_deviation, std::abs(total - 1.0));
      }
    }
  }
  check.pass = check.max_deviation <= check.tolerance;
  return check;
}

SelftestCheck reduction_suite(double tol) {
  SelftestCheck check{"p=1 agreement with q-operator", true, 0.0, 1e-9};
  std::mt19937_64 rng(20160901);
  std::uniform_int_distribution<int> pick_n(1, 30);
  std::uniform_int_distribution<int> pick_ell(0, 3);
  std::uniform_real_distribution<double> pick_q(0.5, 0.99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = pick_n(rng);
    const int ell = pick_ell(rng);
    const double q = pick_q(rng);
    const double x = unit(rng);
    const double c0 = coeff(rng), c1 = coeff(rng), c2 = coeff(rng), c3 = coeff(rng);
    const auto poly = [=](double t) { return c0 + t * (c1 + t * (c2 + t * c3)); };

    const KantorovichOperator op({n, ell, BasisVariant::Normalized, tol}, PQPair(1.0, q));
    const double got = op.apply(RealFunction(poly, op.required_domain(), "poly"), x);
    const double want = reference::q_schurer_kantorovich(n, ell, q, poly, x, tol);
    check.max_deviation = std::max(check.max_deviation, std::abs(got - want));
  }
  check.pass = check.max_deviation <= check.tolerance;
  return check;
}

}  // namespace

std::vector<SelftestCheck> run_selftest(const SelftestOptions& options) {
  return {quadrature_suite(options.tol), partition_suite(options.basis_variant),
          reduction_suite(options.tol)};
}

std::string to_csv(const std::vector<SelftestCheck>& checks) {
  CsvWriter csv({"check", "pass", "max_deviation", "tolerance"});
  for (const auto& c : checks) {
    csv.raw_row({c.name, c.pass ? "1" : "0", format_double(c.max_deviation),
                 format_double(c.tolerance)});
  }
  return csv.str();
}

}  // namespace pqbsk
