#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "xchan/errors.hpp"
#include "xchan/rational.hpp"

namespace xchan {

/// Antenna counts (M1, M2, N1, N2) of the 2x2 X channel: transmitter t has
/// Mt antennas, receiver r has Nr.
struct AntennaConfig {
  int m1 = 1;
  int m2 = 1;
  int n1 = 1;
  int n2 = 1;

  bool transmit_rich_ordering() const { return m1 >= m2 && m2 >= n1 && n1 >= n2; }
  bool receive_rich_ordering() const { return n1 >= n2 && n2 >= m1 && m1 >= m2; }

  /// The mirror configuration with transmitter and receiver roles swapped.
  AntennaConfig swapped() const { return {n1, n2, m1, m2}; }

  friend bool operator==(const AntennaConfig&, const AntennaConfig&) = default;
};

enum class Scenario { kTransmitRich, kReceiveRich };

enum class CaseLabel { kA, kB1, kB2, kB3, kC, kUnsupported };

/// Case classification of a configuration. For Case C/C' the slack
/// x = 3*N2 - (M1+M2) (transmit-rich) or x' = 3*M2 - (N1+N2) (receive-rich)
/// drives the closed-form block lengths and the bound gap.
struct CaseTag {
  Scenario scenario = Scenario::kTransmitRich;
  CaseLabel label = CaseLabel::kUnsupported;
  int x = 0;

  bool supported() const { return label != CaseLabel::kUnsupported; }
  /// "A", "B1", ..., "C" with a trailing ' in the receive-rich scenario.
  std::string name() const;

  friend bool operator==(const CaseTag&, const CaseTag&) = default;
};

/// Block lengths of the four message vectors. Index 0/1/2 are the
/// null-space (V), j-paired (W) and aligned (U) blocks; receive-rich plans
/// use only the first two (the third stays 0) with V holding the jointly
/// aligned pairs and W the free completion vectors.
///   l -> message (1,1), k -> (2,1), j -> (1,2), g -> (2,2)
struct BlockPlan {
  Scenario scenario = Scenario::kTransmitRich;
  std::array<int, 3> l{};
  std::array<int, 3> k{};
  std::array<int, 3> j{};
  std::array<int, 3> g{};
  Rational dof;
  Rational bound;

  int q11() const { return l[0] + l[1] + l[2]; }
  int q21() const { return k[0] + k[1] + k[2]; }
  int q12() const { return j[0] + j[1] + j[2]; }
  int q22() const { return g[0] + g[1] + g[2]; }
  int total_streams() const { return q11() + q21() + q12() + q22(); }
  Rational gap() const { return bound - dof; }

  friend bool operator==(const BlockPlan&, const BlockPlan&) = default;
};

/// Classifies cfg, preferring the transmit-rich ordering when both fit
/// (only the all-equal square configurations do). Throws OrderingError when
/// neither ordering holds. Configurations whose case cannot keep all four
/// messages non-empty come back with label kUnsupported.
CaseTag classify(const AntennaConfig& cfg);

/// Classification forced into one scenario; throws OrderingError if cfg
/// does not satisfy that scenario's antenna ordering.
CaseTag classify_in(const AntennaConfig& cfg, Scenario scenario);

/// Closed-form block-length plan for a supported case. Throws ShapeError
/// when the tag is unsupported or inconsistent with cfg.
BlockPlan plan_blocks(const AntennaConfig& cfg, const CaseTag& tag);

/// Outer-bound DoF of the configuration's case.
Rational outer_bound(const AntennaConfig& cfg, const CaseTag& tag);

/// Brute-force maximum achievable DoF over every feasible block-length
/// tuple inside the case's constraint box (interference budgets, null-space
/// caps, alignment kernel caps, all four messages non-empty). Returns
/// nullopt when no feasible tuple exists (the unsupported configurations).
/// Throws OracleScopeError when any antenna count exceeds 8.
std::optional<Rational> oracle_max_dof(const AntennaConfig& cfg);

/// All configurations with antenna counts in [1, max_antennas] that satisfy
/// at least one ordering, in lexicographic order.
std::vector<AntennaConfig> all_valid_configs(int max_antennas);

}  // namespace xchan
