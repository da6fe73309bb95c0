#include "pqbsk/operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pqbsk/errors.hpp"

namespace pqbsk {

std::string_view to_string(BasisVariant v) {
  switch (v) {
    case BasisVariant::AsPrinted:
      return "printed";
    case BasisVariant::Normalized:
      return "normalized";
  }
  return "unknown";
}

BasisVariant basis_variant_from_string(std::string_view s) {
  if (s == "printed" || s == "as-printed" || s == "asprinted") return BasisVariant::AsPrinted;
  if (s == "normalized") return BasisVariant::Normalized;
  throw ConfigError("unknown basis variant '" + std::string(s) + "' (expected printed|normalized)");
}

void SchurerConfig::validate() const {
  if (n < 1) throw ConfigError("SchurerConfig: n must be >= 1, got " + std::to_string(n));
  if (ell < 0) throw ConfigError("SchurerConfig: ell must be >= 0, got " + std::to_string(ell));
  if (!(quad_tol > 0.0) || !std::isfinite(quad_tol)) {
    throw ConfigError("SchurerConfig: quad_tol must be positive");
  }
}

KantorovichOperator::KantorovichOperator(SchurerConfig config, PQPair pq)
    : config_(config), pq_(pq), rule_((config.validate(), build_rule(pq, 1.0, config.quad_tol))) {
  const int big_n = config_.degree();
  integers_.resize(static_cast<std::size_t>(big_n) + 2);
  for (int k = 0; k <= big_n + 1; ++k) integers_[static_cast<std::size_t>(k)] = pq_integer(k, pq_);
  binomials_.resize(static_cast<std::size_t>(big_n) + 1);
  for (int k = 0; k <= big_n; ++k) binomials_[static_cast<std::size_t>(k)] = pq_binomial(big_n, k, pq_);

  // argument is affine in t, so its extremes over [0, 1/p] sit at the ends.
  double hi = 0.0;
  double lo = 0.0;
  for (int k = 0; k <= big_n; ++k) {
    for (double t : {0.0, rule_.max_node()}) {
      const double v = argument(k, t);
      hi = std::max(hi, v);
      lo = std::min(lo, v);
    }
  }
  domain_ = {lo, hi};
}

double KantorovichOperator::argument(int k, double t) const {
  const auto kk = static_cast<std::size_t>(k);
  const double denom = integers_[static_cast<std::size_t>(config_.n) + 1];
  return integers_[kk] / denom + (integers_[kk + 1] - integers_[kk]) / denom * t;
}

void KantorovichOperator::check_point(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("domain violation: operator evaluated at x=" + std::to_string(x) +
                      " outside [0,1]");
  }
}

void KantorovichOperator::check_function(const RealFunction& f) const {
  if (!f.domain().contains(domain_)) {
    throw DomainError("domain violation: " + f.name() + " must be defined on [" +
                      std::to_string(domain_.lo) + ", " + std::to_string(domain_.hi) + "]");
  }
}

double KantorovichOperator::basis(int k, double x) const {
  check_point(x);
  const int big_n = config_.degree();
  if (k < 0 || k > big_n) return 0.0;
  const double p = pq_.p();
  const double q = pq_.q();
  double value = binomials_[static_cast<std::size_t>(k)] * std::pow(x, k);
  if (config_.basis_variant == BasisVariant::AsPrinted) {
    return value * pq_power_falling(x, big_n - k, pq_);
  }
  // prod_{s<N-k} (p^s - q^s x) / p^{s+k}: the normalising power
  // p^{k(k-1)/2 - N(N-1)/2} = 1 / prod_{s=k}^{N-1} p^s spread over the factors.
  const double p_k = std::pow(p, k);
  double p_pow = 1.0;
  double q_pow = 1.0;
  for (int s = 0; s < big_n - k; ++s) {
    value *= (p_pow - q_pow * x) / (p_pow * p_k);
    p_pow *= p;
    q_pow *= q;
  }
  return value;
}

std::vector<double> KantorovichOperator::basis_values(double x) const {
  const int big_n = config_.degree();
  std::vector<double> out(static_cast<std::size_t>(big_n) + 1);
  for (int k = 0; k <= big_n; ++k) out[static_cast<std::size_t>(k)] = basis(k, x);
  return out;
}

std::vector<double> KantorovichOperator::cell_integrals(const RealFunction& f) const {
  check_function(f);
  const int big_n = config_.degree();
  std::vector<double> cells(static_cast<std::size_t>(big_n) + 1);
  for (int k = 0; k <= big_n; ++k) {
    cells[static_cast<std::size_t>(k)] = rule_.sum([&](double t) { return f(argument(k, t)); });
  }
  return cells;
}

double KantorovichOperator::combine(std::span<const double> cells, double x) const {
  const int big_n = config_.degree();
  if (cells.size() != static_cast<std::size_t>(big_n) + 1) {
    throw ConfigError("combine: expected " + std::to_string(big_n + 1) + " cell integrals");
  }
  double total = 0.0;
  for (int k = 0; k <= big_n; ++k) total += basis(k, x) * cells[static_cast<std::size_t>(k)];
  return total;
}

double KantorovichOperator::apply(const RealFunction& f, double x) const {
  check_point(x);
  const auto cells = cell_integrals(f);
  return combine(cells, x);
}

std::vector<double> KantorovichOperator::apply(const RealFunction& f,
                                               std::span<const double> xs) const {
  for (double x : xs) check_point(x);
  const auto cells = cell_integrals(f);
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(combine(cells, x));
  return out;
}

double KantorovichOperator::central_moment(double x, int order) const {
  if (order != 1 && order != 2) {
    throw ConfigError("central_moment: order must be 1 or 2, got " + std::to_string(order));
  }
  check_point(x);
  const int big_n = config_.degree();
  double total = 0.0;
  for (int k = 0; k <= big_n; ++k) {
    const double b = basis(k, x);
    if (b == 0.0) continue;
    const double cell = rule_.sum([&](double t) {
      const double d = argument(k, t) - x;
      return order == 1 ? d : d * d;
    });
    total += b * cell;
  }
  return total;
}

double basis(const SchurerConfig& config, const PQPair& pq, int k, double x) {
  return KantorovichOperator(config, pq).basis(k, x);
}

double argument(int k, double t, const SchurerConfig& config, const PQPair& pq) {
  config.validate();
  const double denom = pq_integer(config.n + 1, pq);
  const double ik = pq_integer(k, pq);
  return ik / denom + (pq_integer(k + 1, pq) - ik) / denom * t;
}

Interval required_domain(const SchurerConfig& config, const PQPair& pq) {
  return KantorovichOperator(config, pq).required_domain();
}

double apply(const SchurerConfig& config, const PQPair& pq, const RealFunction& f, double x) {
  return KantorovichOperator(config, pq).apply(f, x);
}

double apply_central_moment(const SchurerConfig& config, const PQPair& pq, double x, int order) {
  return KantorovichOperator(config, pq).central_moment(x, order);
}

}  // namespace pqbsk
