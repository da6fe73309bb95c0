#include "pqbsk/reference.hpp"

#include <cmath>
#include <vector>

namespace pqbsk::reference {

double q_integer(int n, double q) { return (1.0 - std::pow(q, n)) / (1.0 - q); }

double q_binomial(int n, int k, double q) {
  if (k < 0 || k > n) return 0.0;
  std::vector<double> row{1.0};
  for (int m = 1; m <= n; ++m) {
    std::vector<double> next(static_cast<std::size_t>(m) + 1, 0.0);
    for (int j = 0; j <= m; ++j) {
      const double left = j > 0 ? row[static_cast<std::size_t>(j) - 1] : 0.0;
      const double right = j < m ? row[static_cast<std::size_t>(j)] : 0.0;
      next[static_cast<std::size_t>(j)] = left + std::pow(q, j) * right;
    }
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(k)];
}

double jackson_integral(const std::function<double(double)>& f, double q, double tol) {
  double total = 0.0;
  double node = 1.0;
  while (node > tol) {  // node == q^j == remaining weight before term j
    total += (1.0 - q) * node * f(node);
    node *= q;
  }
  return total;
}

double q_schurer_kantorovich(int n, int ell, double q, const std::function<double(double)>& f,
                             double x, double tol) {
  const int big_n = n + ell;
  const double denom = q_integer(n + 1, q);
  double total = 0.0;
  for (int k = 0; k <= big_n; ++k) {
    double b = q_binomial(big_n, k, q) * std::pow(x, k);
    for (int s = 0; s < big_n - k; ++s) b *= 1.0 - std::pow(q, s) * x;
    const double qk = q_integer(k, q);
    const double offset = qk / denom;
    const double slope = (1.0 + (q - 1.0) * qk) / denom;
    total += b * jackson_integral([&](double t) { return f(offset + slope * t); }, q, tol);
  }
  return total;
}

}  // namespace pqbsk::reference
