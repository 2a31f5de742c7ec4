#pragma once

#include <stdexcept>
#include <string>

namespace noma_uav {

/// Invalid scenario or model parameters, detected before any simulation work.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A caller broke an operation's precondition (role order, even pool size, ...).
class ContractError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Argument outside the mathematical domain of a formula (zero energy, d <= 0).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

} // namespace noma_uav
