#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "pqbsk/pq_core.hpp"
#include "pqbsk/real_function.hpp"

namespace pqbsk {

inline constexpr std::size_t kDefaultMaxTerms = 1'000'000;

/// Truncation of the (p,q)-definite integral
///
///   int_0^a f d_{p,q}t = (p-q) a sum_{j>=0} q^j/p^{j+1} f(a q^j/p^{j+1})
///
/// to its first K+1 terms. The weights of the dropped tail sum to
/// tail_bound = a (q/p)^{K+1}, so the truncation error is at most
/// sup|f| * tail_bound.
struct QuadratureRule {
  double a = 1.0;
  PQPair pq{1.0, 0.5};
  std::size_t truncation_index = 0;
  std::vector<double> nodes;    // a q^j / p^{j+1}, j = 0..K, strictly decreasing
  std::vector<double> weights;  // (p-q) * nodes[j]
  double tail_bound = 0.0;

  /// Largest node, a/p. Exceeds a when p < 1.
  double max_node() const { return nodes.front(); }
  Interval node_range() const { return {0.0, max_node()}; }

  /// sum_j w_j g(t_j) for any callable; no domain checks.
  template <class F>
  double sum(F&& g) const {
    // Neumaier-compensated summation.
    double total = 0.0;
    double comp = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      const double term = weights[j] * g(nodes[j]);
      const double t = total + term;
      if (std::abs(total) >= std::abs(term)) {
        comp += (total - t) + term;
      } else {
        comp += (term - t) + total;
      }
      total = t;
    }
    return total + comp;
  }
};

/// K is the smallest index with a (q/p)^{K+1} <= tol. Throws TruncationError
/// when K would exceed max_terms.
QuadratureRule build_rule(const PQPair& pq, double a, double tol,
                          std::size_t max_terms = kDefaultMaxTerms);

/// Truncated (p,q)-integral of f on [0, a]. f's domain must cover [0, a/p].
double integrate(const QuadratureRule& rule, const RealFunction& f);

}  // namespace pqbsk
