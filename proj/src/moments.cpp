#include "pqbsk/moments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"

#include "pqbsk/errors.hpp"
#include "pqbsk/report_format.hpp"

namespace pqbsk {

namespace {

struct ClosedFormTerms {
  double int_big_n;        // [n+l]
  double int_big_n_minus;  // [n+l-1]
  double int_n1;           // [n+1]
  double int_2;            // [2]
  double int_3;            // [3]
  double rise_p;           // (p x + 1 - x)^{n+l}
  double rise_p_minus;     // (p x + 1 - x)^{n+l-1}
  double rise_p2;          // (p^2 x + 1 - x)^{n+l}
};

ClosedFormTerms terms(const SchurerConfig& config, const PQPair& pq, double x) {
  config.validate();
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("closed-form moment evaluated at x=" + std::to_string(x) + " outside [0,1]");
  }
  const int big_n = config.degree();
  const double p = pq.p();
  return {pq_integer(big_n, pq),
          pq_integer(big_n - 1, pq),
          pq_integer(config.n + 1, pq),
          pq_integer(2, pq),
          pq_integer(3, pq),
          pq_rising_two_term(p, 1.0, x, 1.0 - x, big_n, pq),
          pq_rising_two_term(p, 1.0, x, 1.0 - x, big_n - 1, pq),
          pq_rising_two_term(p * p, 1.0, x, 1.0 - x, big_n, pq)};
}

double linear_coeff(const PQPair& pq, const ClosedFormTerms& t) {
  const double q = pq.q();
  return 1.0 + 2.0 * q / t.int_2 + (q * q - 1.0) / t.int_3;
}

double quadratic_coeff(const PQPair& pq, const ClosedFormTerms& t) {
  const double q = pq.q();
  return 1.0 + 2.0 * (q - 1.0) / t.int_2 + (q - 1.0) * (q - 1.0) / t.int_3;
}

}  // namespace

double closed_first_moment(const SchurerConfig& config, const PQPair& pq, double x) {
  const auto t = terms(config, pq, x);
  const double shift = pq.p() + 2.0 * pq.q() - 1.0;
  return t.rise_p / (t.int_2 * t.int_n1) + shift * t.int_big_n / (t.int_2 * t.int_n1) * x;
}

double closed_second_moment(const SchurerConfig& config, const PQPair& pq, double x) {
  const auto t = terms(config, pq, x);
  const double d2 = t.int_n1 * t.int_n1;
  return t.rise_p2 / (t.int_3 * d2) + linear_coeff(pq, t) * t.int_big_n / d2 * t.rise_p_minus * x +
         quadratic_coeff(pq, t) * t.int_big_n * t.int_big_n_minus / d2 * x * x;
}

std::pair<double, double> closed_central_moments(const SchurerConfig& config, const PQPair& pq,
                                                 double x) {
  const auto t = terms(config, pq, x);
  const double q = pq.q();
  const double shift = pq.p() + 2.0 * q - 1.0;
  const double d = t.int_2 * t.int_n1;
  const double d2 = t.int_n1 * t.int_n1;

  const double c1 = t.rise_p2 / d + (shift / d - 1.0) * x;

  const double x_coeff =
      linear_coeff(pq, t) * t.int_big_n * t.rise_p_minus / d2 - 2.0 * t.rise_p / d;
  const double x2_coeff = q * quadratic_coeff(pq, t) * t.int_big_n * t.int_big_n_minus / d2 -
                          2.0 * shift * t.int_big_n / d + 1.0;
  const double c2 = t.rise_p2 / (t.int_3 * d2) + x_coeff * x + x2_coeff * x * x;
  return {c1, c2};
}

double MomentRow::diff_m1() const { return std::abs(closed_m1 - oracle_m1); }
double MomentRow::diff_m2() const { return std::abs(closed_m2 - oracle_m2); }
double MomentRow::diff_c1() const { return std::abs(closed_c1 - oracle_c1); }
double MomentRow::diff_c2() const { return std::abs(closed_c2 - oracle_c2); }

std::vector<std::string> MomentReport::consistency_violations() const {
  std::vector<std::string> out;
  const double n_tol = config.n * config.quad_tol;
  const auto note = [&](const MomentRow& r, const char* what, double lhs) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "x=%.17g: %s (value %.3e)", r.x, what, lhs);
    out.emplace_back(buf);
  };
  for (const auto& r : rows) {
    if (config.basis_variant == BasisVariant::Normalized && std::abs(r.oracle_m0 - 1.0) > n_tol) {
      note(r, "m0 != 1", r.oracle_m0 - 1.0);
    }
    if (r.oracle_c2 < -n_tol) note(r, "c2 < 0", r.oracle_c2);
    // Linearity: (t-x) = t - x*1 and (t-x)^2 = t^2 - 2x t + x^2 * 1.
    const double c1_gap = r.oracle_c1 - (r.oracle_m1 - r.x * r.oracle_m0);
    if (std::abs(c1_gap) > 2.0 * n_tol) note(r, "c1 != m1 - x*m0", c1_gap);
    const double c2_gap =
        r.oracle_c2 - (r.oracle_m2 - 2.0 * r.x * r.oracle_m1 + r.x * r.x * r.oracle_m0);
    if (std::abs(c2_gap) > 4.0 * n_tol) note(r, "c2 != m2 - 2x*m1 + x^2*m0", c2_gap);
  }
  return out;
}

MomentReport build_moment_report(const SchurerConfig& config, const PQPair& pq,
                                 const std::vector<double>& grid) {
  const KantorovichOperator op(config, pq);
  const Interval dom = op.required_domain();
  const RealFunction e0([](double) { return 1.0; }, dom, "1");
  const RealFunction e1([](double t) { return t; }, dom, "t");
  const RealFunction e2([](double t) { return t * t; }, dom, "t^2");
  const auto cells0 = op.cell_integrals(e0);
  const auto cells1 = op.cell_integrals(e1);
  const auto cells2 = op.cell_integrals(e2);

  MomentReport report;
  report.config = config;
  report.pq = pq;
  report.rows.reserve(grid.size());
  for (double x : grid) {
    MomentRow row;
    row.x = x;
    row.oracle_m0 = op.combine(cells0, x);
    row.oracle_m1 = op.combine(cells1, x);
    row.oracle_m2 = op.combine(cells2, x);
    row.oracle_c1 = op.central_moment(x, 1);
    row.oracle_c2 = op.central_moment(x, 2);
    row.closed_m1 = closed_first_moment(config, pq, x);
    row.closed_m2 = closed_second_moment(config, pq, x);
    std::tie(row.closed_c1, row.closed_c2) = closed_central_moments(config, pq, x);

    report.max_abs_diff_m1 = std::max(report.max_abs_diff_m1, row.diff_m1());
    report.max_abs_diff_m2 = std::max(report.max_abs_diff_m2, row.diff_m2());
    report.max_abs_diff_c1 = std::max(report.max_abs_diff_c1, row.diff_c1());
    report.max_abs_diff_c2 = std::max(report.max_abs_diff_c2, row.diff_c2());
    report.rows.push_back(row);
  }
  report.max_abs_diff = std::max({report.max_abs_diff_m1, report.max_abs_diff_m2,
                                  report.max_abs_diff_c1, report.max_abs_diff_c2});
  report.discrepancy = report.max_abs_diff > report.discrepancy_threshold();
  return report;
}

std::string to_csv(const MomentReport& report) {
  CsvWriter csv({"x", "oracle_m0", "oracle_m1", "closed_m1", "diff_m1", "oracle_m2", "closed_m2",
                 "diff_m2", "oracle_c1", "closed_c1", "diff_c1", "oracle_c2", "closed_c2",
                 "diff_c2"});
  for (const auto& r : report.rows) {
    csv.row({r.x, r.oracle_m0, r.oracle_m1, r.closed_m1, r.diff_m1(), r.oracle_m2, r.closed_m2,
             r.diff_m2(), r.oracle_c1, r.closed_c1, r.diff_c1(), r.oracle_c2, r.closed_c2,
             r.diff_c2()});
  }
  return csv.str();
}

std::string to_json(const MomentReport& report) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = "1";
  doc["report"] = "moments";
  doc["config"] = config_json(report.config);
  doc["pq"] = {{"p", report.pq.p()}, {"q", report.pq.q()}};
  doc["interpretation"] = report.interpretation;
  doc["summary"] = {{"max_abs_diff_m1", report.max_abs_diff_m1},
                    {"max_abs_diff_m2", report.max_abs_diff_m2},
                    {"max_abs_diff_c1", report.max_abs_diff_c1},
                    {"max_abs_diff_c2", report.max_abs_diff_c2},
                    {"max_abs_diff", report.max_abs_diff},
                    {"discrepancy_threshold", report.discrepancy_threshold()},
                    {"discrepancy", report.discrepancy}};
  auto violations = report.consistency_violations();
  doc["consistency_violations"] = violations;
  auto& rows = doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"x", r.x},
                    {"oracle_m0", r.oracle_m0},
                    {"oracle_m1", r.oracle_m1},
                    {"closed_m1", r.closed_m1},
                    {"oracle_m2", r.oracle_m2},
                    {"closed_m2", r.closed_m2},
                    {"oracle_c1", r.oracle_c1},
                    {"closed_c1", r.closed_c1},
                    {"oracle_c2", r.oracle_c2},
                    {"closed_c2", r.closed_c2}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace pqbsk
