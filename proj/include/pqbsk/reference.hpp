#pragma once

// Independent evaluator for the p = 1 case: the q-Bernstein-Schurer-Kantorovich
// operator written directly in q-calculus terms. Shares no code with the
// (p,q) implementation so the two can check each other.

#include <functional>

namespace pqbsk::reference {

/// (1 - q^n)/(1 - q).
double q_integer(int n, double q);

/// Gaussian binomial via the q-Pascal rule [n k] = [n-1 k-1] + q^k [n-1 k].
double q_binomial(int n, int k, double q);

/// Jackson integral int_0^1 f d_q t = (1-q) sum_j q^j f(q^j), stopped once
/// the remaining weight q^{J+1} drops below tol.
double jackson_integral(const std::function<double(double)>& f, double q, double tol);

/// K^q_{n,l}(f;x) = sum_k [n+l k]_q x^k prod_{s<n+l-k}(1 - q^s x)
///                  * int_0^1 f([k]_q/[n+1]_q + (1 + (q-1)[k]_q)/[n+1]_q t) d_q t
double q_schurer_kantorovich(int n, int ell, double q, const std::function<double(double)>& f,
                             double x, double tol);

}  // namespace pqbsk::reference
