#ifndef MUTSEL_ERRORS_HPP
#define MUTSEL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mutsel {

// Raised when (s, u, nu0) violate the model's standing assumptions.
class InvalidParams : public std::invalid_argument {
 public:
  explicit InvalidParams(const std::string& reason) : std::invalid_argument(reason) {}
};

// Raised by quantities that are only defined in a particular long-run regime
// of the line-counting chain (e.g. the geometric parameter needs positive
// recurrence).
class WrongRegime : public std::domain_error {
 public:
  explicit WrongRegime(const std::string& what) : std::domain_error(what) {}
};

// The coupled pair violated the pathwise order Lbar <= L. This is a bug in
// the coupling construction, never sampling noise; callers must not retry.
class CouplingViolation : public std::logic_error {
 public:
  explicit CouplingViolation(const std::string& what) : std::logic_error(what) {}
};

// Too many Monte Carlo paths ended without a certain classification
// (e.g. still running at the horizon in a regime where the eventual outcome
// cannot be inferred).
class IndeterminateFraction : public std::runtime_error {
 public:
  explicit IndeterminateFraction(const std::string& what) : std::runtime_error(what) {}
};

// A numerical trajectory left [0,1] by more than the clamp tolerance.
class NumericalInstability : public std::runtime_error {
 public:
  explicit NumericalInstability(const std::string& what) : std::runtime_error(what) {}
};

// Adaptive quadrature of the jump hazard could not reach tolerance.
class HazardIntegrationFailure : public std::runtime_error {
 public:
  explicit HazardIntegrationFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mutsel

#endif
