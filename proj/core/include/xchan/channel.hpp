#pragma once

#include <cstdint>

#include "xchan/planner.hpp"
#include "xchan/realmap.hpp"

namespace xchan {

/// Deterministic random source: splitmix64 bit stream with an explicit
/// Box-Muller transform, so the draw sequence is identical across standard
/// library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed * 0x9E3779B97F4A7C15ULL + 1) {}

  std::uint64_t next_u64();
  /// Uniform on (0, 1).
  double uniform();
  /// Standard normal N(0, 1).
  double gauss();
  /// Circularly symmetric complex Gaussian CN(0, 1).
  Complex cgauss();

  /// Independent stream derived from (seed, index), for per-trial seeding.
  static std::uint64_t substream(std::uint64_t seed, std::uint64_t index);

 private:
  std::uint64_t state_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

/// The four channel matrices of one realization; H_rt has N_r rows and
/// M_t columns, entries i.i.d. CN(0, 1).
struct ChannelSet {
  AntennaConfig cfg;
  std::uint64_t seed = 0;
  CMat h11, h12, h21, h22;

  const CMat& h(int receiver, int transmitter) const;
};

ChannelSet generate_channels(const AntennaConfig& cfg, std::uint64_t seed);

}  // namespace xchan
