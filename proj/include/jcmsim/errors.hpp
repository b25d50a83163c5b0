#pragma once

#include <stdexcept>
#include <string>

namespace jcmsim {

// Base of everything the simulator throws on a contract violation.
class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad parameter values (negative coupling, n_max < 2, shots == 0, ...).
class InvalidArgument : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

class OccupationExceedsCutoff : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

class DimensionMismatch : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

class CutoffMismatch : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

class ModeIndexOutOfRange : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

// Renormalizing the zero vector; in practice this means post-selection on an
// outcome that has probability zero.
class ZeroStateError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

class DecodeError : public SimulationError {
 public:
  DecodeError(const std::string& what, double leakage)
      : SimulationError(what), leakage_(leakage) {}
  double leakage() const noexcept { return leakage_; }

 private:
  double leakage_;
};

class ProtocolViolation : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

}  // namespace jcmsim
