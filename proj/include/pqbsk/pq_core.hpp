#pragma once

// (p,q)-arithmetic primitives: integers, factorials, binomial coefficients and
// the two product powers used by the operator basis and the moment formulas.
//
// Every function has two entry points. The PQPair overloads enforce
// 0 < q < p <= 1. The raw (double p, double q) overloads skip that check and
// accept the degenerate limit p == q (e.g. p = q = 1, the classical case),
// which the tests use to confirm the classical reductions.

namespace pqbsk {

/// The parameter pair (p,q) with 0 < q < p <= 1. Construction rejects
/// anything else; there is no clamping.
class PQPair {
 public:
  PQPair(double p, double q);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  /// q/p, strictly inside (0,1).
  double ratio() const noexcept { return q_ / p_; }

  friend bool operator==(const PQPair&, const PQPair&) = default;

 private:
  double p_;
  double q_;
};

/// [n]_{p,q} = sum_{i=0}^{n-1} p^{n-1-i} q^i.
double pq_integer(int n, double p, double q);
double pq_integer(int n, const PQPair& pq);

/// [n]_{p,q}! = prod_{k=1}^{n} [k]_{p,q}, with [0]! = 1.
double pq_factorial(int n, double p, double q);
double pq_factorial(int n, const PQPair& pq);

/// [n k]_{p,q} = [n]!/([k]![n-k]!). Zero when k is outside [0,n].
/// Evaluated as the running product of [n-k+i]/[i], which never forms the
/// full factorials and so stays finite for large n.
double pq_binomial(int n, int k, double p, double q);
double pq_binomial(int n, int k, const PQPair& pq);

/// (1-x)^m_{p,q} = prod_{s=0}^{m-1} (p^s - q^s x).
double pq_power_falling(double x, int m, double p, double q);
double pq_power_falling(double x, int m, const PQPair& pq);

/// (ax + by)^m_{p,q} = prod_{s=0}^{m-1} (p^s a x + q^s b y).
double pq_rising_two_term(double a, double b, double x, double y, int m, double p, double q);
double pq_rising_two_term(double a, double b, double x, double y, int m, const PQPair& pq);

}  // namespace pqbsk
