#pragma once

#include <stdexcept>
#include <string>

namespace qmflow {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  /// Stable identifier used in machine-readable error records.
  virtual const char* kind() const noexcept { return "Error"; }
};

class InfeasibleScenario : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "InfeasibleScenario"; }
};

class ValidityWindowExceeded : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "ValidityWindowExceeded"; }
};

class NonHamiltonian : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "NonHamiltonian"; }
};

class DegenerateCrossing : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "DegenerateCrossing"; }
};

class EnumerationBudgetExceeded : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "EnumerationBudgetExceeded"; }
};

class ConfigError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "ConfigError"; }
};

}  // namespace qmflow
