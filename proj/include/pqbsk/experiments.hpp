#pragma once

// Reproducible experiment drivers behind the command-line tool: Korovkin
// convergence tables, figure data, and the built-in self-test.

#include <string>
#include <string_view>
#include <vector>

#include "pqbsk/operator.hpp"

namespace pqbsk {

/// Uniform grid of `points` values on [lo, hi], endpoints included.
std::vector<double> uniform_grid(int points, double lo = 0.0, double hi = 1.0);

/// Built-in test functions by selector: e0 (1), e1 (t), e2 (t^2),
/// f_fig (1 + cos(5 t^2)), lip_x (t), lip_sqrt (|t - 0.5|^{1/2}).
/// The returned function is declared on `domain`.
RealFunction builtin_function(std::string_view selector, const Interval& domain);
std::vector<std::string> builtin_function_names();

/// (p_n, q_n) per degree n.
class KorovkinSchedule {
 public:
  enum class Kind { Classic, QOnly, Custom };

  /// p_n = 1 - 1/(2(n+1)), q_n = 1 - 1/(n+1).
  static KorovkinSchedule classic();
  /// p_n = 1, q_n = 1 - 1/(n+1).
  static KorovkinSchedule q_only();
  /// Explicit sequences aligned with the n list of the run.
  static KorovkinSchedule custom(std::vector<int> ns, std::vector<double> ps,
                                 std::vector<double> qs);
  /// "classic" | "q-only".
  static KorovkinSchedule from_name(std::string_view name);

  Kind kind() const noexcept { return kind_; }
  std::string name() const;

  PQPair at(int n) const;

  /// Every n gives 0 < q_n < p_n <= 1 and, at the largest n, 1 - p_n and
  /// 1 - q_n are below `guard`. Custom sequences must also be monotone
  /// non-decreasing. Throws ConfigError otherwise.
  void validate(const std::vector<int>& n_list, double guard = 0.01) const;

 private:
  Kind kind_ = Kind::Classic;
  std::vector<int> ns_;
  std::vector<double> ps_;
  std::vector<double> qs_;
};

struct KorovkinRow {
  int n = 0;
  double p = 0.0;
  double q = 0.0;
  std::string function;
  double sup_error = 0.0;
  /// sup_error strictly below the previous n for this function (true for the first n).
  bool decreasing = true;
};

struct KorovkinTable {
  std::string schedule;
  int ell = 0;
  BasisVariant basis_variant = BasisVariant::Normalized;
  double quad_tol = kOperatorQuadTol;
  int grid_points = 0;
  std::vector<KorovkinRow> rows;

  /// Rows for one function, in n order.
  std::vector<KorovkinRow> for_function(std::string_view name) const;
  /// Strict decrease across consecutive n for every function except e0,
  /// whose error is truncation noise.
  bool all_decreasing() const;
};

struct KorovkinOptions {
  int ell = 0;
  int grid_points = 101;
  double quad_tol = kOperatorQuadTol;
  BasisVariant basis_variant = BasisVariant::Normalized;
  double guard = 0.01;
  std::vector<std::string> functions{"e0", "e1", "e2", "f_fig"};
};

KorovkinTable run_korovkin(const KorovkinSchedule& schedule, const std::vector<int>& n_list,
                           const KorovkinOptions& options = {});

std::string to_csv(const KorovkinTable& table);
std::string to_json(const KorovkinTable& table);

struct FigureParams {
  double p = 0.0;
  double q = 0.0;
  int n = 0;
};

/// Artifact defaults, not values taken from any published figure.
std::vector<FigureParams> default_figure_params();
/// Parses "p:q:n,p:q:n,...".
std::vector<FigureParams> parse_figure_params(std::string_view spec);

struct FigureOptions {
  int ell = 0;
  int grid_points = 101;
  double quad_tol = kOperatorQuadTol;
  BasisVariant basis_variant = BasisVariant::Normalized;
};

struct FigureData {
  std::vector<std::string> columns;  // x, f(x), one per parameter triple
  std::vector<std::vector<double>> rows;
};

/// K(f;x) for f(x) = 1 + cos(5x^2) and each (p,q,n) on a uniform [0,1] grid.
FigureData run_figure(const std::vector<FigureParams>& params, const FigureOptions& options = {});

std::string to_csv(const FigureData& data);
std::string to_json(const FigureData& data, const std::vector<FigureParams>& params,
                    const FigureOptions& options);

struct SelftestCheck {
  std::string name;
  bool pass = false;
  double max_deviation = 0.0;
  double tolerance = 0.0;
};

struct SelftestOptions {
  /// Basis used for the partition-of-unity suite. AsPrinted with p < 1
  /// makes that suite fail.
  BasisVariant basis_variant = BasisVariant::Normalized;
  double tol = 1e-12;
};

/// Quadrature monomial identities, partition of unity, and the p = 1
/// agreement with the independent q-operator.
std::vector<SelftestCheck> run_selftest(const SelftestOptions& options = {});

std::string to_csv(const std::vector<SelftestCheck>& checks);

}  // namespace pqbsk
