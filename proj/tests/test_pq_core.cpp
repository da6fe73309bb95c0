#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "pqbsk/errors.hpp"
#include "pqbsk/pq_core.hpp"

using namespace pqbsk;

namespace {

// [n k] = q^k [n-1 k] + p^{n-k} [n-1 k-1], seeded [0 0] = 1.
std::vector<std::vector<double>> binomial_table(int max_n, double p, double q) {
  std::vector<std::vector<double>> t(static_cast<std::size_t>(max_n) + 1);
  t[0] = {1.0};
  for (int n = 1; n <= max_n; ++n) {
    auto& row = t[static_cast<std::size_t>(n)];
    row.assign(static_cast<std::size_t>(n) + 1, 0.0);
    const auto& prev = t[static_cast<std::size_t>(n) - 1];
    for (int k = 0; k <= n; ++k) {
      const double keep = k <= n - 1 ? prev[static_cast<std::size_t>(k)] : 0.0;
      const double step = k >= 1 ? prev[static_cast<std::size_t>(k) - 1] : 0.0;
      row[static_cast<std::size_t>(k)] = std::pow(q, k) * keep + std::pow(p, n - k) * step;
    }
  }
  return t;
}

}  // namespace

TEST_CASE("PQPair enforces 0 < q < p <= 1") {
  CHECK_NOTHROW(PQPair(0.9, 0.8));
  CHECK_NOTHROW(PQPair(1.0, 0.5));
  CHECK_THROWS_AS(PQPair(0.8, 0.8), ConfigError);
  CHECK_THROWS_AS(PQPair(0.8, 0.9), ConfigError);
  CHECK_THROWS_AS(PQPair(1.1, 0.5), ConfigError);
  CHECK_THROWS_AS(PQPair(0.5, 0.0), ConfigError);
  CHECK_THROWS_AS(PQPair(0.5, -0.1), ConfigError);
  CHECK_THROWS_AS(PQPair(NAN, 0.5), ConfigError);
}

TEST_CASE("pq_integer") {
  const PQPair pq(0.9, 0.8);
  CHECK(pq_integer(0, pq) == 0.0);
  CHECK(pq_integer(1, pq) == 1.0);
  CHECK(pq_integer(2, pq) == doctest::Approx(1.7).epsilon(1e-15));
  CHECK(pq_integer(3, pq) == doctest::Approx(2.17).epsilon(1e-15));
  CHECK_THROWS_AS(pq_integer(-1, pq), ConfigError);

  SUBCASE("p = 1 gives the q-integer") {
    for (double q : {0.5, 0.9, 0.99}) {
      for (int n = 0; n <= 64; ++n) {
        CHECK(std::abs(pq_integer(n, PQPair(1.0, q)) - (1.0 - std::pow(q, n)) / (1.0 - q)) <= 1e-14 * std::max(1.0, static_cast<double>(n)));
      }
    }
  }

  SUBCASE("p = q = 1 gives n exactly") {
    for (int n = 0; n <= 200; ++n) CHECK(pq_integer(n, 1.0, 1.0) == static_cast<double>(n));
  }

  SUBCASE("summation form agrees with the ratio form away from p = q") {
    for (int n = 0; n <= 40; ++n) {
      const double ratio = (std::pow(0.9, n) - std::pow(0.8, n)) / 0.1;
      CHECK(pq_integer(n, pq) == doctest::Approx(ratio).epsilon(1e-12));
    }
  }
}

TEST_CASE("pq_factorial") {
  const PQPair pq(0.9, 0.8);
  CHECK(pq_factorial(0, pq) == 1.0);
  CHECK(pq_factorial(2, pq) == doctest::Approx(1.7).epsilon(1e-15));
  CHECK(pq_factorial(3, pq) == doctest::Approx(3.689).epsilon(1e-15));
  CHECK(pq_factorial(5, 1.0, 1.0) == 120.0);
}

TEST_CASE("pq_binomial") {
  const PQPair pq(0.9, 0.8);
  CHECK(pq_binomial(7, 0, pq) == 1.0);
  CHECK(pq_binomial(7, 7, pq) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pq_binomial(3, 1, pq) == doctest::Approx(0.81 + 0.72 + 0.64).epsilon(1e-15));
  CHECK(pq_binomial(4, 2, pq) == doctest::Approx(3.1465).epsilon(1e-14));
  CHECK(pq_binomial(4, -1, pq) == 0.0);
  CHECK(pq_binomial(4, 5, pq) == 0.0);
  CHECK(pq_binomial(6, 3, 1.0, 1.0) == 20.0);

  SUBCASE("recurrence and symmetry, n <= 32") {
    for (const auto& [p, q] : {std::pair{0.9, 0.8}, {1.0, 0.5}, {0.99, 0.98}, {0.7, 0.2}}) {
      const auto table = binomial_table(32, p, q);
      for (int n = 0; n <= 32; ++n) {
        for (int k = 0; k <= n; ++k) {
          const double want = table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
          const double got = pq_binomial(n, k, p, q);
          CHECK(std::abs(got - want) <= 1e-12 * std::abs(want));
          CHECK(std::abs(got - pq_binomial(n, n - k, p, q)) <= 1e-12 * std::abs(got));
        }
      }
    }
  }

  SUBCASE("large n stays finite near the classical limit") {
    const double v = pq_binomial(400, 200, 1.0, 0.9999);
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
  }
}

TEST_CASE("pq_power_falling") {
  const PQPair pq(0.9, 0.8);
  CHECK(pq_power_falling(0.3, 0, pq) == 1.0);
  CHECK(pq_power_falling(0.3, 1, pq) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(pq_power_falling(0.5, 2, pq) == doctest::Approx(0.25).epsilon(1e-15));
  for (int m = 0; m <= 30; ++m) {
    CHECK(std::abs(pq_power_falling(0.0, m, pq) - std::pow(0.9, m * (m - 1) / 2.0)) <= 1e-14);
  }
  CHECK(pq_power_falling(1.0, 3, 1.0, 1.0) == 0.0);
}

TEST_CASE("pq_rising_two_term") {
  const PQPair pq(0.9, 0.8);
  CHECK(pq_rising_two_term(2.0, 3.0, 0.4, 0.1, 0, pq) == 1.0);
  CHECK(pq_rising_two_term(1.0, 1.0, 1.0, 0.0, 3, pq) ==
        doctest::Approx(std::pow(0.9, 3)).epsilon(1e-15));
  CHECK(pq_rising_two_term(2.0, 3.0, 0.4, 0.1, 2, 1.0, 1.0) ==
        doctest::Approx(std::pow(2.0 * 0.4 + 3.0 * 0.1, 2)).epsilon(1e-15));
  // s = 0 and s = 1 factors by hand.
  CHECK(pq_rising_two_term(0.9, 1.0, 0.5, 0.5, 2, pq) ==
        doctest::Approx((0.45 + 0.5) * (0.9 * 0.45 + 0.8 * 0.5)).epsilon(1e-15));
}

TEST_CASE("pure functions: repeated calls agree bit for bit") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double q = 0.05 + 0.9 * unit(rng);
    const double p = q + (1.0 - q) * (0.01 + 0.99 * unit(rng));
    const PQPair pq(p, q);
    const int n = static_cast<int>(unit(rng) * 40);
    CHECK(pq_integer(n, pq) == pq_integer(n, pq));
    CHECK(pq_binomial(n, n / 2, pq) == pq_binomial(n, n / 2, pq));
  }
}
