#include "xchan/channel.hpp"

#include <cmath>
#include <numbers>

namespace xchan {

namespace {

// splitmix64, used both to advance the generator state and to mix seeds.
std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::next_u64() { return splitmix64(state_); }

double Rng::uniform() {
  // 53-bit mantissa in (0, 1); zero is rejected so log() below stays finite.
  double u;
  do {
    u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  } while (u <= 0.0);
  return u;
}

double Rng::gauss() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  cached_ = r * std::sin(phi);
  has_cached_ = true;
  return r * std::cos(phi);
}

Complex Rng::cgauss() {
  const double scale = std::numbers::sqrt2 / 2.0;
  const double re = gauss();
  const double im = gauss();
  return {re * scale, im * scale};
}

std::uint64_t Rng::substream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t state = seed ^ (0xD1B54A32D192ED03ULL * (index + 1));
  return splitmix64(state);
}

const CMat& ChannelSet::h(int receiver, int transmitter) const {
  if (receiver == 1) return transmitter == 1 ? h11 : h12;
  return transmitter == 1 ? h21 : h22;
}

ChannelSet generate_channels(const AntennaConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  auto draw = [&rng](Eigen::Index rows, Eigen::Index cols) {
    CMat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.cgauss();
    return m;
  };
  ChannelSet ch;
  ch.cfg = cfg;
  ch.seed = seed;
  ch.h11 = draw(cfg.n1, cfg.m1);
  ch.h12 = draw(cfg.n1, cfg.m2);
  ch.h21 = draw(cfg.n2, cfg.m1);
  ch.h22 = draw(cfg.n2, cfg.m2);
  return ch;
}

}  // namespace xchan
