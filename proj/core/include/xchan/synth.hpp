#pragma once

#include <array>
#include <cstdint>

#include "xchan/channel.hpp"
#include "xchan/planner.hpp"
#include "xchan/realmap.hpp"

namespace xchan {

/// Precoders of one message, transmit-rich scenario: complex unit-norm
/// columns. v nulls the cross channel, w = j*v pairs with it, u carries the
/// aligned block (and its unaligned extras).
struct MessagePrecoders {
  CMat v, w, u;
};

/// Precoders of one message, receive-rich scenario, realified: v holds the
/// jointly-aligned kernel solutions, w the random rank completion.
struct RealMessagePrecoders {
  RMat v, w;
};

/// All precoding vectors realizing a BlockPlan on one channel realization.
/// Message index order: (1,1), (2,1), (1,2), (2,2).
struct PrecoderSet {
  Scenario scenario = Scenario::kTransmitRich;
  std::array<MessagePrecoders, 4> cx{};
  std::array<RealMessagePrecoders, 4> re{};
  /// Shared alignment directions of the kernel pairs (receive-rich):
  /// align_r1 is 2N1 x K1', align_r2 is 2N2 x L1'.
  RMat align_r1, align_r2;

  static int msg_index(int receiver, int transmitter) {
    return (transmitter - 1) * 2 + (receiver - 1);
  }

  /// Realified precoder matrix of one group (0 = v, 1 = w, 2 = u) of the
  /// message for `receiver` from `transmitter`; 2*Mt rows.
  RMat real_group(int receiver, int transmitter, int group) const;

  int group_cols(int receiver, int transmitter, int group) const;
};

inline constexpr int kRedrawLimit = 16;

/// Transmit-rich construction: null-space precoders for the v groups,
/// w = j*v pairing, generic u precoders with the cross-message alignment
/// solves. Random ingredients are redrawn (up to kRedrawLimit) until both
/// per-transmitter realified precoder stacks reach full column rank.
PrecoderSet synth_transmit_rich(const ChannelSet& ch, const BlockPlan& plan, std::uint64_t seed,
                                const TolerancePolicy& pol = {});

/// Receive-rich construction: aligned triples (h(i), V21_i, V22_i) from the
/// kernel of the stacked alignment system at R1 (and mirrored at R2), plus
/// random w completions redrawn until the per-transmitter stacks have full
/// column rank.
PrecoderSet synth_receive_rich(const ChannelSet& ch, const BlockPlan& plan, std::uint64_t seed,
                               const TolerancePolicy& pol = {});

/// Dispatches on plan.scenario.
PrecoderSet synthesize(const ChannelSet& ch, const BlockPlan& plan, std::uint64_t seed,
                       const TolerancePolicy& pol = {});

}  // namespace xchan
