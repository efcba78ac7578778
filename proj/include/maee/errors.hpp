#ifndef MAEE_ERRORS_HPP
#define MAEE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace maee {

// Argument outside the mathematical domain of an operation (negative speed,
// non-positive noise power, infeasible operating point, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Physical parameter set that cannot describe a working motor/link.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Invalid configuration document or sweep specification. The message always
// starts with the offending key path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Destination that cannot be reached within one coherence block.
class FeasibilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace maee

#endif  // MAEE_ERRORS_HPP
