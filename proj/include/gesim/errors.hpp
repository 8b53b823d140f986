#pragma once

#include <stdexcept>
#include <string>

namespace gesim {

// Configuration / input-file problems. CLI maps these to exit code 2.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Base for violations of physical preconditions. CLI maps these to exit code 3.
class PhysicsError : public std::runtime_error {
  public:
    explicit PhysicsError(const std::string& what) : std::runtime_error(what) {}
};

class ResonanceOrderingError : public PhysicsError {
  public:
    explicit ResonanceOrderingError(const std::string& what) : PhysicsError(what) {}
};

class ScaleSeparationError : public PhysicsError {
  public:
    explicit ScaleSeparationError(const std::string& what) : PhysicsError(what) {}
};

class QuadratureResolutionError : public PhysicsError {
  public:
    explicit QuadratureResolutionError(const std::string& what) : PhysicsError(what) {}
};

class TruncationError : public PhysicsError {
  public:
    explicit TruncationError(const std::string& what) : PhysicsError(what) {}
};

class CavityModeError : public PhysicsError {
  public:
    explicit CavityModeError(const std::string& what) : PhysicsError(what) {}
};

class GridExtentError : public PhysicsError {
  public:
    explicit GridExtentError(const std::string& what) : PhysicsError(what) {}
};

class StepSizeError : public PhysicsError {
  public:
    explicit StepSizeError(const std::string& what) : PhysicsError(what) {}
};

class IntegratorDriftError : public PhysicsError {
  public:
    explicit IntegratorDriftError(const std::string& what) : PhysicsError(what) {}
};

}  // namespace gesim
