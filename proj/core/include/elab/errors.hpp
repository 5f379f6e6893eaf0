#pragma once

#include <stdexcept>
#include <string>

namespace elab {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A forbidden monomial or an inadmissible combination was supplied.
class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

// Two horizontal vectors live at different base points.
class BasePointMismatch : public Error {
 public:
  using Error::Error;
};

// The frame fields fail to span a rank-2 distribution at the query point.
class DegenerateFrame : public Error {
 public:
  using Error::Error;
};

// V, W, [V,W], [W,[V,W]] are not linearly independent at the query point.
class BasisFailure : public Error {
 public:
  using Error::Error;
};

// A coefficient function depends on z where the projection requires z-freeness.
class ZDependence : public Error {
 public:
  using Error::Error;
};

// The adaptive step controller underflowed.
class StepFailure : public Error {
 public:
  using Error::Error;
};

// A characteristic never reached its initial surface within the horizon.
class NoBoundaryHit : public Error {
 public:
  using Error::Error;
};

// A scalar field was queried where its derivatives do not exist.
class NonDifferentiable : public Error {
 public:
  using Error::Error;
};

// A control or curve violates the nonspacelike condition u >= |v|.
class NotNonspacelike : public Error {
 public:
  using Error::Error;
};

// A curve sample left the region required by the check.
class RegionViolation : public Error {
 public:
  using Error::Error;
};

// Region name not recognized.
class UnknownRegion : public Error {
 public:
  using Error::Error;
};

// Two clouds being compared were generated from different seeds.
class SeedMismatch : public Error {
 public:
  using Error::Error;
};

// Configuration file malformed, or contains unknown keys.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// File could not be read, written, or parsed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace elab
