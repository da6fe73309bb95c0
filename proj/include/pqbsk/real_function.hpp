#pragma once

#include <functional>
#include <string>
#include <utility>

namespace pqbsk {

/// Closed interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  bool contains(const Interval& other) const noexcept {
    return lo <= other.lo && other.hi <= hi;
  }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Smallest interval containing both arguments.
Interval hull(const Interval& a, const Interval& b);

/// A real function together with the closed interval it is defined on.
/// Evaluating outside that interval throws DomainError; nothing is extended.
class RealFunction {
 public:
  RealFunction(std::function<double(double)> fn, Interval domain, std::string name = "f");

  double operator()(double x) const;

  const Interval& domain() const noexcept { return domain_; }
  const std::string& name() const noexcept { return name_; }

  /// Same map on a sub-interval. Throws DomainError if `sub` is not inside
  /// the current domain.
  RealFunction restricted(const Interval& sub) const;

  /// Same map with a different declared domain, for maps that are defined
  /// everywhere (polynomials, the figure function).
  RealFunction with_domain(const Interval& domain) const;

 private:
  std::function<double(double)> fn_;
  Interval domain_;
  std::string name_;
};

}  // namespace pqbsk
