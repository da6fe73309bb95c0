#pragma once

// Moduli of continuity and empirical checks of the operator's error bounds:
//
//   first-modulus bound   |K(f;x) - f(x)| <= 2 w(f, sqrt(delta_n(x)))
//   Lipschitz bound       |K(f;x) - f(x)| <= M delta_n(x)^{alpha/2}
//   K-functional bound    |K(f;x) - f(x)| <= C w2(f, sqrt(a_n(x))) + w(f, c_n(x))
//
// with delta_n(x) = K((t-x)^2; x). The first two are checked as inequalities;
// the third has an unspecified constant C, so only the ratio
// error / (w2 + w) is required to stay finite and below a cap.

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pqbsk/operator.hpp"

namespace pqbsk {

/// Default outer grid: domain length / kModulusGridDivisions.
inline constexpr int kModulusGridDivisions = 2000;
inline constexpr double kDefaultRatioCap = 50.0;

/// Samples f on a uniform grid over its domain and answers first- and
/// second-order modulus queries over that grid:
///
///   w(d)  = max |f(x_i) - f(x_j)|,               |i - j| h <= d
///   w2(d) = max |f(x_i+2m) - 2 f(x_i+m) + f(x_i)|, 0 < m h <= d
///
/// evaluated at the grid shifts and interpolated linearly in between, so both
/// are monotone in d and exact for linear f. Errors against the continuous
/// suprema are of the order of f's oscillation over one grid step.
class ModulusTable {
 public:
  ModulusTable(const RealFunction& f, double grid_step);

  double step() const noexcept { return step_; }
  const Interval& domain() const noexcept { return domain_; }
  /// Largest |f| on the grid.
  double sup_abs() const noexcept { return sup_abs_; }

  double omega(double delta) const;
  double omega2(double delta) const;

 private:
  double interpolate(const std::vector<double>& table, double delta) const;

  Interval domain_;
  double step_;
  double sup_abs_ = 0.0;
  std::vector<double> first_;   // first_[m]  = max over shifts <= m
  std::vector<double> second_;  // second_[m] = max over shifts 1..m
};

/// w(f, delta) on a grid of the given step over f's domain.
double modulus(const RealFunction& f, double delta, double grid_step);
/// w2(f, delta) on a grid of the given step over f's domain.
double modulus2(const RealFunction& f, double delta, double grid_step);

/// K((t-x)^2; x), clamped at zero.
double delta_n(const SchurerConfig& config, const PQPair& pq, double x);
/// The printed closed-form first moment used in the K-functional bound.
double alpha_n(const SchurerConfig& config, const PQPair& pq, double x);

/// Throws NotLipschitzError unless |f(t) - f(x)| <= M |t-x|^alpha on all
/// pairs of a `samples`-point grid over `on`.
void verify_lipschitz(const RealFunction& f, double M, double alpha, const Interval& on,
                      int samples = 401);

enum class BoundTheorem { FirstModulus, Lipschitz, KFunctional };

std::string_view to_string(BoundTheorem t);
/// "t32" | "t33" | "t34".
BoundTheorem bound_theorem_from_string(std::string_view s);

/// Where the K-functional check takes alpha_n from.
enum class AlphaSource {
  /// The printed closed-form first moment (default).
  ClosedForm,
  /// The operator's own first moment K(t;x).
  Operator,
};

std::string_view to_string(AlphaSource s);
/// "closed" | "operator".
AlphaSource alpha_source_from_string(std::string_view s);

struct BoundRow {
  double x = 0.0;
  double error = 0.0;    // |K(f;x) - f(x)|
  double delta_n = 0.0;  // K((t-x)^2;x), clamped at 0
  double bound_t32 = std::numeric_limits<double>::quiet_NaN();
  double bound_t33 = std::numeric_limits<double>::quiet_NaN();
  double alpha_n = std::numeric_limits<double>::quiet_NaN();
  double oracle_m1 = std::numeric_limits<double>::quiet_NaN();
  double a_n = std::numeric_limits<double>::quiet_NaN();
  double c_n = std::numeric_limits<double>::quiet_NaN();
  double omega2_term = std::numeric_limits<double>::quiet_NaN();
  double omega_term = std::numeric_limits<double>::quiet_NaN();
  double ratio_t34 = std::numeric_limits<double>::quiet_NaN();
  bool pass = true;
};

struct BoundReport {
  BoundTheorem theorem = BoundTheorem::FirstModulus;
  SchurerConfig config;
  PQPair pq{1.0, 0.5};
  std::string function_name;
  double grid_step = 0.0;  // modulus grid
  double slack = 0.0;
  std::optional<double> lipschitz_m;
  std::optional<double> lipschitz_alpha;
  double ratio_cap = kDefaultRatioCap;
  AlphaSource alpha_source = AlphaSource::ClosedForm;
  std::vector<BoundRow> rows;
  std::vector<std::string> violations;

  bool passed() const noexcept { return violations.empty(); }
  double max_error() const;
  double max_ratio() const;
};

struct BoundOptions {
  /// 0 selects domain length / kModulusGridDivisions.
  double grid_step = 0.0;
  double ratio_cap = kDefaultRatioCap;
  AlphaSource alpha_source = AlphaSource::ClosedForm;
};

/// Error budget for a row check: quadrature truncation on every cell plus one
/// grid step of f's oscillation. The slack used by the checks is 10x this.
double tolerance_budget(const SchurerConfig& config, const ModulusTable& table);

/// Domain the bound checks sample f on: [0,1] united with the operator's
/// required domain. The K-functional check further widens it to the range
/// of alpha_n over its grid.
Interval bound_domain(const KantorovichOperator& op);

BoundReport check_t32(const SchurerConfig& config, const PQPair& pq, const RealFunction& f,
                      const std::vector<double>& grid, BoundOptions options = {});

BoundReport check_t33(const SchurerConfig& config, const PQPair& pq, const RealFunction& f,
                      double M, double alpha, const std::vector<double>& grid,
                      BoundOptions options = {});

BoundReport check_t34(const SchurerConfig& config, const PQPair& pq, const RealFunction& f,
                      const std::vector<double>& grid, BoundOptions options = {});

std::string to_csv(const BoundReport& report);
std::string to_json(const BoundReport& report);

}  // namespace pqbsk
