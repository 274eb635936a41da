#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "xchan/planner.hpp"
#include "xchan/structcode.hpp"
#include "xchan/verify.hpp"

namespace xchan {

/// One Monte Carlo experiment: structured-coded messages through noisy
/// channels with zero-forcing recovery over an SNR sweep.
struct TrialConfig {
  AntennaConfig cfg;
  ConstellationParam constellation = ConstellationParam::with_default_c(1);
  std::vector<double> snr_db;
  int trials = 1;
  std::uint64_t seed = 0;
  /// Channel draws whose receiver stacks are conditioned worse than this are
  /// re-seeded (counted in resynth_count): zero forcing amplifies noise by
  /// the inverse smallest singular value, and a near-defective stack passes
  /// the rank certification yet decodes garbage at any finite SNR.
  double zf_condition_limit = 300.0;

  void validate() const {
    constellation.validate();
    if (trials < 1) throw DomainError("TrialConfig: trials must be >= 1");
    if (snr_db.empty()) throw DomainError("TrialConfig: SNR list must be nonempty");
    for (std::size_t i = 1; i < snr_db.size(); ++i)
      if (snr_db[i] <= snr_db[i - 1])
        throw DomainError("TrialConfig: SNR list must be strictly increasing");
    if (zf_condition_limit <= 1.0)
      throw DomainError("TrialConfig: zf_condition_limit must exceed 1");
  }
};

struct TrialResult {
  AntennaConfig cfg;
  Rational plan_dof;
  std::vector<double> snr_db;
  /// Symbol error rate per SNR point, per message (order (1,1),(2,1),(1,2),(2,2)).
  std::vector<std::array<double, 4>> ser;
  /// Pooled symbol error rate per SNR point.
  std::vector<double> aggregate_ser;
  /// Zero-forcing rate proxy sum over desired streams of (1/2)log2(1+SINR),
  /// averaged over trials, per SNR point.
  std::vector<double> rate_sum;
  /// Linear-regression slope of rate_sum against log2(SNR) over the top half
  /// of the sweep; estimates the achieved DoF.
  double dof_slope = 0.0;
  /// Channel redraws forced by synthesis or verification failures.
  int resynth_count = 0;
};

/// Runs the experiment. Per trial: draw channels, synthesize and verify the
/// precoders (re-seeding failed draws, counted in resynth_count), then sweep
/// the SNR list with common messages and noise. Deterministic in tc.seed.
TrialResult run_trials(const TrialConfig& tc);

}  // namespace xchan
