#include "pqbsk/real_function.hpp"

#include <algorithm>
#include <cstdio>

#include "pqbsk/errors.hpp"

namespace pqbsk {

namespace {

std::string describe(const Interval& i) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", i.lo, i.hi);
  return buf;
}

}  // namespace

Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

RealFunction::RealFunction(std::function<double(double)> fn, Interval domain, std::string name)
    : fn_(std::move(fn)), domain_(domain), name_(std::move(name)) {
  if (!(domain_.lo <= domain_.hi)) {
    throw DomainError("RealFunction '" + name_ + "': empty domain " + describe(domain_));
  }
}

double RealFunction::operator()(double x) const {
  if (!domain_.contains(x)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    throw DomainError("domain violation: " + name_ + "(" + buf + ") outside " + describe(domain_));
  }
  return fn_(x);
}

RealFunction RealFunction::restricted(const Interval& sub) const {
  if (!domain_.contains(sub)) {
    throw DomainError("domain violation: cannot restrict " + name_ + " on " + describe(domain_) +
                      " to " + describe(sub));
  }
  return RealFunction(fn_, sub, name_);
}

RealFunction RealFunction::with_domain(const Interval& domain) const {
  return RealFunction(fn_, domain, name_);
}

}  // namespace pqbsk
