#pragma once

#include <stdexcept>
#include <string>

namespace eit {

// Grid too small for the stencil width, bad spacing, or shape mismatch.
class StencilError : public std::runtime_error {
 public:
  explicit StencilError(const std::string& what) : std::runtime_error(what) {}
};

// Field passed with the wrong density weight / grid for an operation.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

// State outside the admissible box (rho <= 0, T <= 0, J_phi <= 0, ...).
class AdmissibilityError : public std::runtime_error {
 public:
  explicit AdmissibilityError(const std::string& what) : std::runtime_error(what) {}
};

// Relaxation-time / mode combinations that have no finite-rate meaning.
class DegenerateRelaxationError : public std::runtime_error {
 public:
  explicit DegenerateRelaxationError(const std::string& what) : std::runtime_error(what) {}
};

// Scenario / closure configuration rejected at load time.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// NaN/Inf detected while stepping.
class BlowupError : public std::runtime_error {
 public:
  BlowupError(const std::string& what, long step) : std::runtime_error(what), step_index(step) {}
  long step_index;
};

}  // namespace eit
