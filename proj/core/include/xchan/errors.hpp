#pragma once

#include <stdexcept>
#include <string>

namespace xchan {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Matrix/vector dimensions inconsistent with each other or with a plan.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Antenna configuration fits neither the transmit-rich nor the
/// receive-rich ordering.
class OrderingError : public Error {
 public:
  using Error::Error;
};

/// Constellation point outside the legal domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Integer is not a legal structured codeword.
class DecodeError : public Error {
 public:
  using Error::Error;
};

/// Linear system has no solution within the residual tolerance.
class UnsolvableError : public Error {
 public:
  using Error::Error;
};

/// Random redraws exhausted while completing a precoder set to full rank;
/// signals a pathological channel draw.
class SynthesisError : public Error {
 public:
  using Error::Error;
};

/// The channel realization cannot host the requested plan (e.g. alignment
/// kernel smaller than the planned number of aligned pairs).
class PlanInfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Brute-force enumeration requested beyond its supported size.
class OracleScopeError : public Error {
 public:
  using Error::Error;
};

}  // namespace xchan
