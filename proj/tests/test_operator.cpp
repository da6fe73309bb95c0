#include <cmath>
#include <random>

#include "doctest.h"

#include "pqbsk/errors.hpp"
#include "pqbsk/experiments.hpp"
#include "pqbsk/operator.hpp"
#include "pqbsk/reference.hpp"

using namespace pqbsk;

namespace {

SchurerConfig cfg(int n, int ell, BasisVariant v = BasisVariant::Normalized, double tol = 1e-12) {
  return {n, ell, v, tol};
}

double basis_sum(const KantorovichOperator& op, double x) {
  double total = 0.0;
  for (double b : op.basis_values(x)) total += b;
  return total;
}

// Classical Kantorovich second central moment, brute force over k with the
// inner integral of ((k+t)/(n+1) - x)^2 done in closed form.
double classical_kantorovich_c2(int n, double x) {
  double total = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double b = std::tgamma(n + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(n - k + 1.0)) *
                     std::pow(x, k) * std::pow(1.0 - x, n - k);
    const double a = k / (n + 1.0) - x;
    const double c = 1.0 / (n + 1.0);
    total += b * (a * a + a * c + c * c / 3.0);
  }
  return total;
}

}  // namespace

TEST_CASE("SchurerConfig validation") {
  CHECK_THROWS_AS(KantorovichOperator(cfg(0, 0), PQPair(0.9, 0.8)), ConfigError);
  CHECK_THROWS_AS(KantorovichOperator(cfg(3, -1), PQPair(0.9, 0.8)), ConfigError);
  CHECK_THROWS_AS(KantorovichOperator(cfg(3, 0, BasisVariant::Normalized, 0.0), PQPair(0.9, 0.8)),
                  ConfigError);
  CHECK(basis_variant_from_string("printed") == BasisVariant::AsPrinted);
  CHECK(basis_variant_from_string("normalized") == BasisVariant::Normalized);
  CHECK_THROWS_AS(basis_variant_from_string("other"), ConfigError);
}

TEST_CASE("basis") {
  const PQPair pq(0.9, 0.8);

  SUBCASE("printed basis at N = 2 sums to p + (1-p) x^2") {
    const KantorovichOperator op(cfg(2, 0, BasisVariant::AsPrinted), pq);
    CHECK(basis_sum(op, 0.5) == doctest::Approx(0.925).epsilon(1e-15));
    for (double x : uniform_grid(101)) {
      CHECK(std::abs(basis_sum(op, x) - (0.9 + 0.1 * x * x)) <= 1e-13);
    }
  }

  SUBCASE("normalized basis is a partition of unity, N <= 8, random x") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int big_n = 1; big_n <= 8; ++big_n) {
      for (int ell = 0; ell <= 2 && ell < big_n; ++ell) {
        const KantorovichOperator op(cfg(big_n - ell, ell), pq);
        for (int i = 0; i < 100; ++i) CHECK(std::abs(basis_sum(op, unit(rng)) - 1.0) <= 1e-12);
      }
    }
  }

  SUBCASE("x = 0 keeps only k = 0") {
    const KantorovichOperator op(cfg(6, 1), pq);
    CHECK(op.basis(0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    for (int k = 1; k <= 7; ++k) CHECK(op.basis(k, 0.0) == 0.0);
  }

  SUBCASE("non-negative on [0,1], zero outside the index range") {
    const KantorovichOperator op(cfg(9, 2, BasisVariant::AsPrinted), pq);
    for (double x : uniform_grid(51)) {
      for (double b : op.basis_values(x)) CHECK(b >= 0.0);
    }
    CHECK(op.basis(-1, 0.5) == 0.0);
    CHECK(op.basis(12, 0.5) == 0.0);
    CHECK_THROWS_AS(op.basis(0, 1.5), DomainError);
  }

  SUBCASE("variants coincide at p = 1") {
    const PQPair one(1.0, 0.7);
    const KantorovichOperator a(cfg(5, 1, BasisVariant::AsPrinted), one);
    const KantorovichOperator b(cfg(5, 1, BasisVariant::Normalized), one);
    for (double x : uniform_grid(11)) {
      for (int k = 0; k <= 6; ++k) CHECK(a.basis(k, x) == doctest::Approx(b.basis(k, x)).epsilon(1e-14));
    }
  }

  CHECK(basis(cfg(2, 0, BasisVariant::AsPrinted), pq, 2, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("partition of unity up to N = 64 on a 101-point grid") {
  for (const auto& [p, q] : {std::pair{0.9, 0.8}, {0.99, 0.98}, {0.6, 0.3}}) {
    for (int big_n = 1; big_n <= 64; ++big_n) {
      const KantorovichOperator op(cfg(big_n, 0, BasisVariant::Normalized, 1e-6), PQPair(p, q));
      double worst = 0.0;
      for (double x : uniform_grid(101)) worst = std::max(worst, std::abs(basis_sum(op, x) - 1.0));
      CHECK(worst <= 1e-12);
    }
  }
}

TEST_CASE("argument") {
  const PQPair pq(0.9, 0.8);
  const auto config = cfg(5, 1);
  const double n1 = pq_integer(6, pq);
  CHECK(argument(0, 0.7, config, pq) == doctest::Approx(0.7 / n1).epsilon(1e-15));
  CHECK(argument(3, 0.0, config, pq) == doctest::Approx(pq_integer(3, pq) / n1).epsilon(1e-15));

  SUBCASE("p = 1: [k+1]_q - [k]_q = q^k = 1 + (q-1)[k]_q") {
    for (double q : {0.5, 0.9, 0.99}) {
      const PQPair one(1.0, q);
      for (int k = 0; k <= 32; ++k) {
        const double diff = pq_integer(k + 1, one) - pq_integer(k, one);
        CHECK(std::abs(diff - std::pow(q, k)) <= 1e-13);
        CHECK(std::abs(diff - (1.0 + (q - 1.0) * reference::q_integer(k, q))) <= 1e-12);
      }
    }
  }

  SUBCASE("increasing in t when p = 1") {
    const KantorovichOperator op(cfg(10, 2), PQPair(1.0, 0.8));
    for (int k = 0; k <= 12; ++k) CHECK(op.argument(k, 0.5) < op.argument(k, 0.6));
  }

  SUBCASE("for p < 1 the slope turns negative once [k] passes its peak") {
    // [k]_{0.95,0.9} peaks near k = 13; beyond that [k+1] < [k].
    const KantorovichOperator op(cfg(30, 0), PQPair(0.95, 0.9));
    CHECK(op.argument(5, 0.6) > op.argument(5, 0.5));
    CHECK(op.argument(25, 0.6) < op.argument(25, 0.5));
    CHECK(op.argument(25, op.rule().max_node()) > 0.0);
  }
}

TEST_CASE("required_domain") {
  CHECK(required_domain(cfg(4, 0), PQPair(1.0, 0.5)).hi == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(required_domain(cfg(4, 2), PQPair(1.0, 0.5)).hi ==
        doctest::Approx(1.0241935483870968).epsilon(1e-15));
  CHECK(required_domain(cfg(4, 0), PQPair(0.9, 0.8)).hi ==
        doctest::Approx(1.0068955603752605).epsilon(1e-15));
  CHECK(required_domain(cfg(4, 0), PQPair(0.9, 0.8)).hi >
        required_domain(cfg(4, 0), PQPair(1.0, 0.8)).hi);
  for (int n : {1, 5, 20}) {
    for (int ell : {0, 1, 3}) {
      CHECK(required_domain(cfg(n, ell), PQPair(1.0, 0.9)).lo == 0.0);
      CHECK(required_domain(cfg(n, ell), PQPair(1.0, 0.9)).hi <= 1.0 + ell + 1e-12);
    }
  }
}

TEST_CASE("apply") {
  const PQPair pq(0.9, 0.8);

  SUBCASE("reproduces constants with the normalized basis") {
    for (int n : {1, 4, 15}) {
      for (int ell : {0, 2}) {
        const auto config = cfg(n, ell, BasisVariant::Normalized, 1e-10);
        const KantorovichOperator op(config, pq);
        const RealFunction one([](double) { return 1.0; }, op.required_domain(), "1");
        for (double x : uniform_grid(21)) CHECK(std::abs(op.apply(one, x) - 1.0) <= n * 1e-10);
      }
    }
  }

  SUBCASE("x = 0, f = t gives 1/([2][n+1])") {
    const KantorovichOperator op(cfg(7, 2), pq);
    const RealFunction t([](double v) { return v; }, op.required_domain(), "t");
    CHECK(op.apply(t, 0.0) ==
          doctest::Approx(1.0 / (pq_integer(2, pq) * pq_integer(8, pq))).epsilon(1e-11));
  }

  SUBCASE("x = 0 collapses to a single (p,q)-integral") {
    const KantorovichOperator op(cfg(6, 1), pq);
    const auto f = builtin_function("f_fig", op.required_domain());
    const double n1 = pq_integer(7, pq);
    const double want = op.rule().sum([&](double t) { return f(t / n1); });
    CHECK(op.apply(f, 0.0) == doctest::Approx(want).epsilon(1e-14));
  }

  SUBCASE("rejects x outside [0,1] and functions with a short domain") {
    const KantorovichOperator op(cfg(5, 0), pq);
    const RealFunction narrow([](double v) { return v; }, {0.0, 0.5}, "narrow");
    CHECK_THROWS_AS(op.apply(narrow, 0.3), DomainError);
    const RealFunction wide([](double v) { return v; }, {0.0, 5.0}, "wide");
    CHECK_THROWS_AS(op.apply(wide, 1.1), DomainError);
    CHECK_THROWS_AS(op.apply(wide, -0.1), DomainError);
  }

  SUBCASE("free function matches the precomputed operator") {
    const auto config = cfg(6, 1);
    const KantorovichOperator op(config, pq);
    const auto f = builtin_function("e2", op.required_domain());
    CHECK(apply(config, pq, f, 0.4) == op.apply(f, 0.4));
  }
}

TEST_CASE("p = 1 agrees with the independent q-operator") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> pick_n(1, 30);
  std::uniform_int_distribution<int> pick_ell(0, 3);
  std::uniform_real_distribution<double> pick_q(0.5, 0.99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = pick_n(rng);
    const int ell = pick_ell(rng);
    const double q = pick_q(rng);
    const double x = unit(rng);
    const double c0 = coeff(rng), c1 = coeff(rng), c2 = coeff(rng);
    const auto poly = [=](double t) { return c0 + t * (c1 + t * c2); };
    const KantorovichOperator op(cfg(n, ell, BasisVariant::Normalized, 1e-12), PQPair(1.0, q));
    const double got = op.apply(RealFunction(poly, op.required_domain(), "poly"), x);
    const double want = reference::q_schurer_kantorovich(n, ell, q, poly, x, 1e-12);
    CHECK(std::abs(got - want) <= 1e-9);
  }
}

TEST_CASE("central moments") {
  SUBCASE("second central moment is non-negative") {
    for (const auto& [p, q] : {std::pair{0.9, 0.8}, {0.99, 0.98}, {1.0, 0.6}}) {
      const KantorovichOperator op(cfg(12, 1, BasisVariant::Normalized, 1e-10), PQPair(p, q));
      for (double x : uniform_grid(21)) CHECK(op.central_moment(x, 2) >= -1e-9);
    }
  }

  SUBCASE("near-classical parameters approach the classical Kantorovich moment") {
    const KantorovichOperator op(cfg(50, 0, BasisVariant::Normalized, 1e-10), PQPair(1.0, 0.9999));
    const double got = op.central_moment(0.3, 2);
    const double classical = classical_kantorovich_c2(50, 0.3);
    CHECK(classical == doctest::Approx(0.004084326541073935).epsilon(1e-12));
    CHECK(got > 0.0);
    CHECK(got == doctest::Approx(classical).epsilon(0.02));
  }

  SUBCASE("first central moment at x = 0 is the raw first moment") {
    const PQPair pq(0.95, 0.85);
    CHECK(apply_central_moment(cfg(9, 0), pq, 0.0, 1) ==
          doctest::Approx(1.0 / (pq_integer(2, pq) * pq_integer(10, pq))).epsilon(1e-11));
  }

  CHECK_THROWS_AS(apply_central_moment(cfg(3, 0), PQPair(0.9, 0.8), 0.5, 3), ConfigError);
}

TEST_CASE("positivity, linearity and monotonicity") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  const double tol = 1e-10;
  const KantorovichOperator op(cfg(14, 2, BasisVariant::Normalized, tol), PQPair(0.97, 0.91));
  const Interval dom = op.required_domain();
  const auto f = builtin_function("f_fig", dom);
  const RealFunction g([](double t) { return std::exp(t) - 1.0; }, dom, "g");
  const RealFunction h([&](double t) { return f(t) + std::abs(std::sin(7.0 * t)); }, dom, "h");
  const auto grid = uniform_grid(41);
  const auto kf = op.apply(f, grid);
  const auto kg = op.apply(g, grid);
  const auto kh = op.apply(h, grid);
  const int n = op.config().n;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(kf[i] >= -n * tol);  // f >= 0
    CHECK(kf[i] <= kh[i] + 2.0 * n * tol);  // f <= h
  }
  for (int trial = 0; trial < 10; ++trial) {
    const double a = coeff(rng);
    const double b = coeff(rng);
    const RealFunction mix([&](double t) { return a * f(t) + b * g(t); }, dom, "mix");
    const auto km = op.apply(mix, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(km[i] - (a * kf[i] + b * kg[i])) <= 1e-10);
  }
}
