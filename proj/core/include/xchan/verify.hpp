#pragma once

#include <map>
#include <string>
#include <vector>

#include "xchan/channel.hpp"
#include "xchan/rational.hpp"
#include "xchan/synth.hpp"

namespace xchan {

/// Occupied vs available real dimensions at one receiver.
struct BudgetUsage {
  int occupied = 0;
  int available = 0;
  bool ok() const { return occupied <= available; }
};

/// Outcome of the numerical certification of one (channel, plan, precoder)
/// triple: every condition the independence argument relies on, with the
/// worst residual / rank behind each boolean for debuggability.
struct VerificationReport {
  bool nulling_ok = false;
  bool pairing_ok = false;
  bool alignment_ok = false;
  bool tx_rank_ok = false;
  bool rx1_rank_ok = false;
  bool rx2_rank_ok = false;
  std::map<std::string, double> residuals;
  std::map<std::string, int> ranks;
  BudgetUsage budget_r1, budget_r2;
  Rational achieved_dof;
  /// Conditions that passed but landed within 10x of their tolerance;
  /// borderline conditioning that a rank threshold cannot distinguish from
  /// true deficiency.
  std::vector<std::string> warnings;

  bool all_ok() const {
    return nulling_ok && pairing_ok && alignment_ok && tx_rank_ok && rx1_rank_ok &&
           rx2_rank_ok && budget_r1.ok() && budget_r2.ok();
  }
};

/// The real receive matrix a receiver actually faces: desired columns first,
/// then one column per aligned interference pair plus the unaligned
/// interference columns.
struct ReceiverStack {
  RMat a;
  int desired_cols = 0;
  int interference_cols = 0;
};

/// Canonical column order: receiver 1 sees [H11b*(m11 groups) H12b*(m12
/// groups)] desired; receiver 2 sees [H21b*(m21 groups) H22b*(m22 groups)].
/// Groups appear in message-block order (v, w, u). Aligned interference
/// pairs whose residual passes pol are deduplicated to one column; broken
/// pairs keep both columns.
ReceiverStack build_receiver_stack(const ChannelSet& ch, const PrecoderSet& pre, int receiver,
                                   const TolerancePolicy& pol = {});

/// Certifies nulling, j-pairing, alignment, per-transmitter precoder rank,
/// receiver stack rank and the dimension budgets; counts the achieved DoF
/// from the number of desired columns recoverable by linear elimination.
VerificationReport verify_all(const ChannelSet& ch, const BlockPlan& plan,
                              const PrecoderSet& pre, const TolerancePolicy& pol = {});

/// Solves the receiver's stacked linear system for all desired message
/// coefficients (noiseless recovery is exact to solver precision). Throws
/// UnsolvableError when the stack is rank-deficient.
RVec decode_zero_forcing(const ChannelSet& ch, const PrecoderSet& pre, const RVec& received,
                         int receiver, const TolerancePolicy& pol = {});

}  // namespace xchan
