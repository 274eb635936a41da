#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "xchan/planner.hpp"

// Brute-force enumeration of every feasible block-length tuple per case.
// Kept deliberately independent of the closed-form planner: nothing here
// reuses plan_blocks or its formulas.

namespace xchan {

namespace {

// Sums realizable by a precoder pair (x1, x2) with 0 <= x2 <= x1 <= cap.
// Derived by explicit pair enumeration; every other constraint and the
// objective depend on the pair only through its sum.
std::vector<int> pair_sums(int cap) {
  std::set<int> sums;
  for (int x1 = 0; x1 <= std::max(cap, 0); ++x1)
    for (int x2 = 0; x2 <= x1; ++x2) sums.insert(x1 + x2);
  return {sums.begin(), sums.end()};
}

// Max of sa+sb over sa in a, sb in b with sa+sb <= cap, q_a = sa+base_a >= 1,
// q_b = sb+base_b >= 1. Returns -1 when infeasible.
int best_pair_total(const std::vector<int>& a, const std::vector<int>& b, int cap, int base_a,
                    int base_b) {
  int best = -1;
  for (int sa : a) {
    if (sa > cap) break;
    if (sa + base_a < 1) continue;
    for (int sb : b) {
      if (sa + sb > cap) break;
      if (sb + base_b < 1) continue;
      best = std::max(best, sa + sb);
    }
  }
  return best;
}

// Transmit-rich Cases A and B: third blocks tied (K3 = G3, L3 = J3),
// interference budgets D2 <= 2N2 - J3 and D1 <= 2N1 - K3.
std::optional<int> max_streams_transmit_tied(const AntennaConfig& c) {
  const auto sums_k = pair_sums(c.m1 - c.n1);
  const auto sums_g = pair_sums(c.m2 - c.n1);
  const auto sums_l = pair_sums(c.m1 - c.n2);
  const auto sums_j = pair_sums(c.m2 - c.n2);
  int best = -1;
  for (int k3 = 0; k3 <= c.n1; ++k3) {
    for (int j3 = 0; j3 <= c.n2; ++j3) {
      const int cap_kg = 2 * c.n2 - j3 - 2 * k3;
      const int cap_lj = 2 * c.n1 - k3 - 2 * j3;
      if (cap_kg < 0 || cap_lj < 0) continue;
      const int kg = best_pair_total(sums_k, sums_g, cap_kg, k3, k3);
      const int lj = best_pair_total(sums_l, sums_j, cap_lj, j3, j3);
      if (kg < 0 || lj < 0) continue;
      best = std::max(best, kg + lj + 2 * k3 + 2 * j3);
    }
  }
  if (best < 0) return std::nullopt;
  return best;
}

// Transmit-rich Case C: relaxed K3 <= G3 <= N1, L3 <= J3 <= N2, budgets
// D2 + J3 <= 2N2 and D1 + G3 <= 2N1 (distinct interference directions at R1
// number G3 once the unaligned extras are counted).
std::optional<int> max_streams_transmit_relaxed(const AntennaConfig& c) {
  const auto sums_k = pair_sums(c.m1 - c.n1);
  const auto sums_g = pair_sums(c.m2 - c.n1);
  const auto sums_l = pair_sums(c.m1 - c.n2);
  const auto sums_j = pair_sums(c.m2 - c.n2);
  int best = -1;
  for (int g3 = 0; g3 <= c.n1; ++g3) {
    for (int k3 = 0; k3 <= g3; ++k3) {
      for (int j3 = 0; j3 <= c.n2; ++j3) {
        for (int l3 = 0; l3 <= j3; ++l3) {
          const int cap_kg = 2 * c.n2 - j3 - k3 - g3;
          const int cap_lj = 2 * c.n1 - g3 - l3 - j3;
          if (cap_kg < 0 || cap_lj < 0) continue;
          const int kg = best_pair_total(sums_k, sums_g, cap_kg, k3, g3);
          const int lj = best_pair_total(sums_l, sums_j, cap_lj, l3, j3);
          if (kg < 0 || lj < 0) continue;
          best = std::max(best, kg + lj + k3 + g3 + l3 + j3);
        }
      }
    }
  }
  if (best < 0) return std::nullopt;
  return best;
}

// Receive-rich: one uniform constraint set. Aligned pairs K1'=G1' bounded by
// the nullity of the stacked alignment system at R1 (and L1'=J1' at R2);
// per-transmitter real dimensions and both receiver budgets close the box.
std::optional<int> max_streams_receive(const AntennaConfig& c) {
  const int cap_k1 = std::max(2 * (c.m1 + c.m2 - c.n1), 0);
  const int cap_l1 = std::max(2 * (c.m1 + c.m2 - c.n2), 0);
  const int t1 = 2 * c.m1;
  const int t2 = 2 * c.m2;
  int best = -1;
  for (int k1 = 0; k1 <= std::min({cap_k1, t1, t2}); ++k1) {
    for (int l1 = 0; l1 <= std::min({cap_l1, t1 - k1, t2 - k1}); ++l1) {
      for (int k2 = 0; k2 + k1 + l1 <= t1; ++k2) {
        for (int l2 = 0; l2 + k2 + k1 + l1 <= t1; ++l2) {
          for (int g2 = 0; g2 + k1 + l1 <= t2; ++g2) {
            for (int j2 = 0; j2 + g2 + k1 + l1 <= t2; ++j2) {
              if (2 * l1 + l2 + j2 + k1 + k2 + g2 > 2 * c.n1) continue;
              if (2 * k1 + k2 + g2 + l1 + l2 + j2 > 2 * c.n2) continue;
              const int q11 = l1 + l2, q12 = l1 + j2, q21 = k1 + k2, q22 = k1 + g2;
              if (q11 < 1 || q12 < 1 || q21 < 1 || q22 < 1) continue;
              best = std::max(best, q11 + q12 + q21 + q22);
            }
          }
        }
      }
    }
  }
  if (best < 0) return std::nullopt;
  return best;
}

}  // namespace

std::optional<Rational> oracle_max_dof(const AntennaConfig& cfg) {
  if (cfg.m1 > 8 || cfg.m2 > 8 || cfg.n1 > 8 || cfg.n2 > 8)
    throw OracleScopeError("oracle_max_dof: enumeration limited to antenna counts <= 8");
  std::optional<int> streams;
  if (cfg.transmit_rich_ordering()) {
    const bool relaxed = cfg.m1 + cfg.m2 <= 3 * cfg.n2 &&
                         cfg.m1 + cfg.m2 < 2 * cfg.n1 + cfg.n2;  // Case C region
    streams = relaxed ? max_streams_transmit_relaxed(cfg) : max_streams_transmit_tied(cfg);
  } else if (cfg.receive_rich_ordering()) {
    streams = max_streams_receive(cfg);
  } else {
    throw OrderingError("oracle_max_dof: configuration fits neither ordering");
  }
  if (!streams) return std::nullopt;
  return Rational(*streams, 2);
}

}  // namespace xchan
