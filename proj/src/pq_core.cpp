#include "pqbsk/pq_core.hpp"

#include <cmath>
#include <string>

#include "pqbsk/errors.hpp"

namespace pqbsk {

namespace {

void require_non_negative(int n, const char* what) {
  if (n < 0) {
    throw ConfigError(std::string(what) + " must be non-negative, got " + std::to_string(n));
  }
}

}  // namespace

PQPair::PQPair(double p, double q) : p_(p), q_(q) {
  if (!(std::isfinite(p) && std::isfinite(q) && q > 0.0 && q < p && p <= 1.0)) {
    throw ConfigError("PQPair requires 0 < q < p <= 1, got p=" + std::to_string(p) +
                      ", q=" + std::to_string(q));
  }
}

double pq_integer(int n, double p, double q) {
  require_non_negative(n, "pq_integer: n");
  // Horner form of sum p^{n-1-i} q^i: s_{j+1} = p*s_j + q^j.
  double sum = 0.0;
  double q_pow = 1.0;
  for (int i = 0; i < n; ++i) {
    sum = p * sum + q_pow;
    q_pow *= q;
  }
  return sum;
}

double pq_integer(int n, const PQPair& pq) { return pq_integer(n, pq.p(), pq.q()); }

double pq_factorial(int n, double p, double q) {
  require_non_negative(n, "pq_factorial: n");
  double result = 1.0;
  for (int k = 1; k <= n; ++k) result *= pq_integer(k, p, q);
  return result;
}

double pq_factorial(int n, const PQPair& pq) { return pq_factorial(n, pq.p(), pq.q()); }

double pq_binomial(int n, int k, double p, double q) {
  require_non_negative(n, "pq_binomial: n");
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double result = 1.0;
  for (int i = 1; i <= k; ++i) {
    result *= pq_integer(n - k + i, p, q) / pq_integer(i, p, q);
  }
  return result;
}

double pq_binomial(int n, int k, const PQPair& pq) { return pq_binomial(n, k, pq.p(), pq.q()); }

double pq_power_falling(double x, int m, double p, double q) {
  require_non_negative(m, "pq_power_falling: m");
  double result = 1.0;
  double p_pow = 1.0;
  double q_pow = 1.0;
  for (int s = 0; s < m; ++s) {
    result *= p_pow - q_pow * x;
    p_pow *= p;
    q_pow *= q;
  }
  return result;
}

double pq_power_falling(double x, int m, const PQPair& pq) {
  return pq_power_falling(x, m, pq.p(), pq.q());
}

double pq_rising_two_term(double a, double b, double x, double y, int m, double p, double q) {
  require_non_negative(m, "pq_rising_two_term: m");
  double result = 1.0;
  double p_pow = 1.0;
  double q_pow = 1.0;
  for (int s = 0; s < m; ++s) {
    result *= p_pow * a * x + q_pow * b * y;
    p_pow *= p;
    q_pow *= q;
  }
  return result;
}

double pq_rising_two_term(double a, double b, double x, double y, int m, const PQPair& pq) {
  return pq_rising_two_term(a, b, x, y, m, pq.p(), pq.q());
}

}  // namespace pqbsk
