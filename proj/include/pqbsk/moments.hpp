#pragma once

// Closed-form first and second moments of the operator as printed, together
// with a report comparing them against direct operator evaluation.
//
// The two-term power (a x + 1 - x)^m_{p,q} is read as the product
// prod_{s<m} (p^s a x + q^s (1-x)), i.e. pq_rising_two_term(a, 1, x, 1-x, m).

#include <string>
#include <utility>
#include <vector>

#include "pqbsk/operator.hpp"

namespace pqbsk {

inline constexpr const char* kRisingPowerInterpretation =
    "(a*x+1-x)^m_{p,q} = prod_{s=0}^{m-1} (p^s*a*x + q^s*(1-x)), a in {p, p^2}";

double closed_first_moment(const SchurerConfig& config, const PQPair& pq, double x);
double closed_second_moment(const SchurerConfig& config, const PQPair& pq, double x);
/// (first, second) central moments from the printed formulas. The printed
/// first central moment leads with (p^2 x + 1 - x) rather than the (p x + 1 - x)
/// of the raw first moment; that is kept verbatim.
std::pair<double, double> closed_central_moments(const SchurerConfig& config, const PQPair& pq,
                                                 double x);

struct MomentRow {
  double x = 0.0;
  double oracle_m0 = 0.0;
  double oracle_m1 = 0.0;
  double oracle_m2 = 0.0;
  double oracle_c1 = 0.0;
  double oracle_c2 = 0.0;
  double closed_m1 = 0.0;
  double closed_m2 = 0.0;
  double closed_c1 = 0.0;
  double closed_c2 = 0.0;

  double diff_m1() const;
  double diff_m2() const;
  double diff_c1() const;
  double diff_c2() const;
};

struct MomentReport {
  SchurerConfig config;
  PQPair pq{1.0, 0.5};
  std::string interpretation = kRisingPowerInterpretation;
  std::vector<MomentRow> rows;

  double max_abs_diff_m1 = 0.0;
  double max_abs_diff_m2 = 0.0;
  double max_abs_diff_c1 = 0.0;
  double max_abs_diff_c2 = 0.0;
  double max_abs_diff = 0.0;
  /// max_abs_diff above discrepancy_threshold(): the closed forms disagree
  /// with the operator beyond quadrature noise.
  bool discrepancy = false;

  double discrepancy_threshold() const { return 100.0 * config.quad_tol; }

  /// Central-vs-raw identities and positivity on every row; empty when all hold.
  std::vector<std::string> consistency_violations() const;
};

MomentReport build_moment_report(const SchurerConfig& config, const PQPair& pq,
                                 const std::vector<double>& grid);

std::string to_csv(const MomentReport& report);
std::string to_json(const MomentReport& report);

}  // namespace pqbsk
