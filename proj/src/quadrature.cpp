#include "pqbsk/quadrature.hpp"

#include <cmath>
#include <string>

#include "pqbsk/errors.hpp"

namespace pqbsk {

QuadratureRule build_rule(const PQPair& pq, double a, double tol, std::size_t max_terms) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw ConfigError("build_rule: upper limit a must be positive, got " + std::to_string(a));
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw ConfigError("build_rule: tol must be positive, got " + std::to_string(tol));
  }
  const double r = pq.ratio();
  const auto tail = [&](double k) { return a * std::pow(r, k + 1.0); };

  // Closed-form estimate, then nudge for rounding.
  double k_est = std::ceil(std::log(tol / a) / std::log(r)) - 1.0;
  if (k_est < 0.0) k_est = 0.0;
  if (k_est > static_cast<double>(max_terms)) {
    throw TruncationError("truncation infeasible: tol=" + std::to_string(tol) + " needs about " +
                          std::to_string(k_est) + " terms for q/p=" + std::to_string(r) +
                          " (cap " + std::to_string(max_terms) + ")");
  }
  auto k = static_cast<std::size_t>(k_est);
  while (tail(static_cast<double>(k)) > tol) ++k;
  while (k > 0 && tail(static_cast<double>(k - 1)) <= tol) --k;
  if (k > max_terms) {
    throw TruncationError("truncation infeasible: K=" + std::to_string(k) + " exceeds cap " +
                          std::to_string(max_terms));
  }

  QuadratureRule rule;
  rule.a = a;
  rule.pq = pq;
  rule.truncation_index = k;
  rule.nodes.resize(k + 1);
  rule.weights.resize(k + 1);
  const double top = a / pq.p();
  const double spacing = pq.p() - pq.q();
  for (std::size_t j = 0; j <= k; ++j) {
    rule.nodes[j] = top * std::pow(r, static_cast<double>(j));
    rule.weights[j] = spacing * rule.nodes[j];
  }
  rule.tail_bound = tail(static_cast<double>(k));
  return rule;
}

double integrate(const QuadratureRule& rule, const RealFunction& f) {
  if (!f.domain().contains(rule.node_range())) {
    throw DomainError("domain violation: " + f.name() + " must be defined on [0, " +
                      std::to_string(rule.max_node()) + "] for this (p,q)-integral");
  }
  return rule.sum([&](double t) { return f(t); });
}

}  // namespace pqbsk
