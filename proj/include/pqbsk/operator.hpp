#pragma once

// The (p,q)-Bernstein-Schurer-Kantorovich operator
//
//   K(f;x) = sum_{k=0}^{n+l} b_k(x) int_0^1 f( [k]/[n+1] + ([k+1]-[k])/[n+1] t ) d_{p,q}t
//
// evaluated as a finite sum of truncated (p,q)-integrals.

#include <span>
#include <string_view>
#include <vector>

#include "pqbsk/pq_core.hpp"
#include "pqbsk/quadrature.hpp"
#include "pqbsk/real_function.hpp"

namespace pqbsk {

enum class BasisVariant {
  /// [N k] x^k (1-x)^{N-k}_{p,q}. Sums to 1 only when p = 1.
  AsPrinted,
  /// AsPrinted times p^{k(k-1)/2 - N(N-1)/2}; a partition of unity.
  Normalized,
};

std::string_view to_string(BasisVariant v);
/// Accepts "printed"/"as-printed" and "normalized".
BasisVariant basis_variant_from_string(std::string_view s);

inline constexpr double kOperatorQuadTol = 1e-10;

struct SchurerConfig {
  int n = 1;    // degree parameter, >= 1
  int ell = 0;  // Schurer shift, >= 0
  BasisVariant basis_variant = BasisVariant::Normalized;
  double quad_tol = kOperatorQuadTol;

  int degree() const noexcept { return n + ell; }
  /// Throws ConfigError on n < 1, ell < 0 or a non-positive tolerance.
  void validate() const;
};

/// b_k(x) for 0 <= k <= n+l; zero for k out of range. x must lie in [0,1].
double basis(const SchurerConfig& config, const PQPair& pq, int k, double x);

/// [k]/[n+1] + ([k+1]-[k])/[n+1] * t.
double argument(int k, double t, const SchurerConfig& config, const PQPair& pq);

/// [0, D] where D is the largest argument(k, t) over 0 <= k <= n+l and
/// quadrature nodes t in [0, 1/p]. Every f handed to apply needs this domain.
Interval required_domain(const SchurerConfig& config, const PQPair& pq);

/// Precomputed operator for one (config, pq): the (p,q)-integers, the shared
/// quadrature rule on [0,1] and the argument coefficients. Immutable and
/// safe to share between threads.
class KantorovichOperator {
 public:
  KantorovichOperator(SchurerConfig config, PQPair pq);

  const SchurerConfig& config() const noexcept { return config_; }
  const PQPair& pq() const noexcept { return pq_; }
  const QuadratureRule& rule() const noexcept { return rule_; }
  const Interval& required_domain() const noexcept { return domain_; }

  double basis(int k, double x) const;
  /// All n+l+1 basis values at x.
  std::vector<double> basis_values(double x) const;
  double argument(int k, double t) const;

  /// int_0^1 f(argument(k, t)) d_{p,q}t for k = 0..n+l. Independent of x, so
  /// one call serves a whole grid.
  std::vector<double> cell_integrals(const RealFunction& f) const;

  /// sum_k b_k(x) cells[k].
  double combine(std::span<const double> cells, double x) const;

  double apply(const RealFunction& f, double x) const;
  std::vector<double> apply(const RealFunction& f, std::span<const double> xs) const;

  /// K((t-x)^order; x) for order 1 or 2, evaluated directly.
  double central_moment(double x, int order) const;

 private:
  void check_point(double x) const;
  void check_function(const RealFunction& f) const;

  SchurerConfig config_;
  PQPair pq_;
  QuadratureRule rule_;
  std::vector<double> integers_;  // [0]..[n+l+1]
  std::vector<double> binomials_; // [N k], k = 0..N
  Interval domain_;
};

double apply(const SchurerConfig& config, const PQPair& pq, const RealFunction& f, double x);

double apply_central_moment(const SchurerConfig& config, const PQPair& pq, double x, int order);

}  // namespace pqbsk
