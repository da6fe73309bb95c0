#pragma once

#include <stdexcept>
#include <string>

namespace pqbsk {

/// Invalid parameters: (p,q) outside 0 < q < p <= 1, bad indices, bad tolerances.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A function was evaluated outside its declared domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The truncated (p,q)-integral would need more terms than the configured cap.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A function failed the sampled Lipschitz/Hoelder precondition.
class NotLipschitzError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pqbsk
