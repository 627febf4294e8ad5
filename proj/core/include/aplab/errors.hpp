#pragma once

#include <stdexcept>
#include <string>

namespace aplab {

/// Bad input from a caller: malformed ids, out-of-range parameters, invalid configs.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed data files or instances (parse errors, probabilities that do not sum to 1).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A strategy, procedure or certificate broke its contract during a run.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A requested computation exceeds the exhaustive/enumeration limits.
class LimitExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace aplab
