#pragma once

#include <cstdint>
#include <vector>

#include "xchan/errors.hpp"

namespace xchan {

/// Parameters of the structured code packing a two-dimensional integer
/// constellation point into one real integer. Q is the per-dimension
/// half-extent, c the packing factor; c >= 2Q+1 keeps the packed
/// constellation overlap-free with minimum distance >= 1.
struct ConstellationParam {
  int q = 1;
  int c = 3;

  static ConstellationParam with_default_c(int q) { return {q, 2 * q + 1}; }

  void validate() const {
    if (q < 1) throw DomainError("ConstellationParam: Q must be >= 1");
    if (c < 2 * q + 1)
      throw DomainError("ConstellationParam: c must satisfy c >= 2Q+1");
  }
};

/// A point (u, v) with u, v in {-Q..-1, 1..Q}; zero is excluded.
struct ConstellationPoint {
  int u = 1;
  int v = 1;

  friend bool operator==(const ConstellationPoint&, const ConstellationPoint&) = default;
};

/// s = u + c*v. Injective over the legal domain. Throws DomainError for
/// points outside the constellation.
std::int64_t encode(const ConstellationPoint& p, const ConstellationParam& param);

/// Inverse of encode: v = nearest integer to s/c, u = s - c*v. Throws
/// DecodeError when s is not a legal codeword.
ConstellationPoint decode(std::int64_t s, const ConstellationParam& param);

/// (c*Q)^2 + Q^2, the power constraint the packing trades for.
double power_constraint(const ConstellationParam& param);

/// All legal codewords in increasing order ((2Q)^2 of them).
std::vector<std::int64_t> codebook(const ConstellationParam& param);

/// Exact mean square of a codeword drawn uniformly from the codebook.
double mean_square_code(const ConstellationParam& param);

/// Nearest legal codeword to an arbitrary real value (used by the
/// noisy-decision path in the simulator).
std::int64_t nearest_codeword(double value, const ConstellationParam& param);

}  // namespace xchan
