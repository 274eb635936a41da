#include "xchan/planner.hpp"

#include <string>

namespace xchan {

namespace {

std::string cfg_str(const AntennaConfig& c) {
  return "(" + std::to_string(c.m1) + "," + std::to_string(c.m2) + "," + std::to_string(c.n1) +
         "," + std::to_string(c.n2) + ")";
}

CaseTag classify_transmit_rich(const AntennaConfig& c) {
  CaseTag tag{Scenario::kTransmitRich, CaseLabel::kUnsupported, 0};
  const int msum = c.m1 + c.m2;
  if (msum >= 2 * c.n1 + c.n2) {
    // The doubly degenerate boundary M1+M2 = 3N2 = 2N1+N2 lands here too.
    if (c.m2 > c.n1)
      tag.label = CaseLabel::kB3;
    else if (c.n1 == c.n2)
      tag.label = (c.n1 > 1) ? CaseLabel::kB1 : CaseLabel::kUnsupported;
    else
      tag.label = CaseLabel::kB2;
  } else if (msum > 3 * c.n2) {
    tag.label = CaseLabel::kA;
  } else {
    if (c.n1 > 1) {
      tag.label = CaseLabel::kC;
      tag.x = 3 * c.n2 - msum;
    }
  }
  return tag;
}

CaseTag classify_receive_rich(const AntennaConfig& c) {
  CaseTag tag{Scenario::kReceiveRich, CaseLabel::kUnsupported, 0};
  const int nsum = c.n1 + c.n2;
  if (nsum >= 2 * c.m1 + c.m2) {
    if (c.n2 > c.m1)
      tag.label = CaseLabel::kB3;
    else if (c.m1 == c.m2)
      tag.label = (c.m1 > 1) ? CaseLabel::kB1 : CaseLabel::kUnsupported;
    else
      tag.label = CaseLabel::kB2;
  } else if (nsum > 3 * c.m2) {
    tag.label = CaseLabel::kA;
  } else {
    if (c.m1 > 1) {
      tag.label = CaseLabel::kC;
      tag.x = 3 * c.m2 - nsum;
    }
  }
  return tag;
}

BlockPlan plan_transmit_rich(const AntennaConfig& c, const CaseTag& tag) {
  BlockPlan p;
  p.scenario = Scenario::kTransmitRich;
  const int m1 = c.m1, m2 = c.m2, n1 = c.n1, n2 = c.n2;
  switch (tag.label) {
    case CaseLabel::kA: {
      p.k = {m1 - n1, m1 - n1, 2 * n1 + n2 - m1 - m2};
      p.g = {m2 - n1, m2 - n1, 2 * n1 + n2 - m1 - m2};
      p.j = {m2 - n2, m2 - n2, 0};
      const int lsum = m1 - m2 + n2;
      p.l = {(lsum + 1) / 2, lsum / 2, 0};
      p.dof = Rational(m1 + m2 + n2, 2);
      break;
    }
    case CaseLabel::kB1: {
      p.l = {n1 - 1, n1 - 2, 1};
      p.k = {n2 - 1, n2 - 2, 1};
      p.j = {0, 0, 1};
      p.g = {0, 0, 1};
      p.dof = Rational(n1 + n2 - 1);
      break;
    }
    case CaseLabel::kB2: {
      p.l = {n2, n2 - 1, 0};
      p.k = {n2 - 1, n2 - 1, 1};
      p.j = {m2 - n2, m2 - n2, 0};
      p.g = {0, 0, 1};
      p.dof = Rational(2 * (n1 + n2) - 1, 2);
      break;
    }
    case CaseLabel::kB3: {
      if (2 * (m2 - n1) >= n2) {
        p.g = {(n2 + 1) / 2, n2 / 2, 0};
        p.k = {(n2 + 1) / 2, n2 / 2, 0};
      } else {
        p.g = {m2 - n1, m2 - n1, 0};
        p.k = {n1 + n2 - m2, n1 + n2 - m2, 0};
      }
      if (2 * (m2 - n2) >= n1) {
        p.l = {(n1 + 1) / 2, n1 / 2, 0};
        p.j = {(n1 + 1) / 2, n1 / 2, 0};
      } else {
        p.j = {m2 - n2, m2 - n2, 0};
        p.l = {n1 + n2 - m2, n1 + n2 - m2, 0};
      }
      p.dof = Rational(n1 + n2);
      break;
    }
    case CaseLabel::kC: {
      const int x = tag.x;
      p.k = {m1 - n1, m1 - n1, 2 * (n1 - n2) + (2 * x) / 3};
      p.g = {m2 - n1, m2 - n1, 2 * n1 + n2 - m1 - m2 - x / 3};
      p.l = {m1 - n2, m1 - n2, (2 * x) / 3};
      // ceil((x-1)/3) for x >= 0: (x+1)/3 by integer division.
      p.j = {m2 - n2, m2 - n2, 3 * n2 - m1 - m2 - (x + 1) / 3};
      p.dof = Rational(2 * (m1 + m2 - n2) + (2 * x) / 3, 2);
      break;
    }
    default:
      throw ShapeError("plan_blocks: unsupported configuration " + cfg_str(c));
  }
  return p;
}

BlockPlan plan_receive_rich(const AntennaConfig& c, const CaseTag& tag) {
  BlockPlan p;
  p.scenario = Scenario::kReceiveRich;
  const int m1 = c.m1, m2 = c.m2, n1 = c.n1, n2 = c.n2;
  switch (tag.label) {
    case CaseLabel::kA: {
      p.k = {n2 - n1 + m2, n1 + n2 - 3 * m2, 0};
      p.g = {n2 - n1 + m2, 0, 0};
      p.l = {n1 - n2 + m2, 0, 0};
      p.j = {n1 - n2 + m2, 0, 0};
      p.dof = Rational(n1 + n2 + m2, 2);
      break;
    }
    case CaseLabel::kB1: {
      p.k = {0, 1, 0};
      p.g = {0, 1, 0};
      p.l = {2 * m2 - 2, 0, 0};
      p.j = {2 * m2 - 2, 0, 0};
      p.dof = Rational(m1 + m2 - 1);
      break;
    }
    case CaseLabel::kB2: {
      p.k = {0, 2 * (n2 - m2), 0};
      p.g = {0, 1, 0};
      p.l = {2 * m2 - 1, 0, 0};
      p.j = {2 * m2 - 1, 0, 0};
      p.dof = Rational(2 * (m1 + m2) - 1, 2);
      break;
    }
    case CaseLabel::kB3: {
      const int q21 = std::min(2 * (n2 - m2), m1);
      const int q22 = std::min(2 * (n2 - m1), m2);
      const int q11 = 2 * m1 - q21;
      const int q12 = 2 * m2 - q22;
      const int aligned_r1 = std::max(2 * (m1 + m2 - n1), 0);
      const int aligned_r2 = std::max(2 * (m1 + m2 - n2), 0);
      p.k = {aligned_r1, q21 - aligned_r1, 0};
      p.g = {aligned_r1, q22 - aligned_r1, 0};
      p.l = {aligned_r2, q11 - aligned_r2, 0};
      p.j = {aligned_r2, q12 - aligned_r2, 0};
      p.dof = Rational(m1 + m2);
      break;
    }
    case CaseLabel::kC: {
      const int x = tag.x;
      const int q11 = 2 * (n1 - m2) + (2 * x) / 3;
      const int q21 = n2 + m2 - n1 - (x + 1) / 3;
      const int q22 = n2 + m2 - n1 - x / 3;
      p.l = {q11, 0, 0};
      p.j = {q11, 0, 0};
      p.k = {q21, 0, 0};
      p.g = {q21, q22 - q21, 0};
      p.dof = Rational(2 * (n1 + n2 - m2) + (2 * x) / 3, 2);
      break;
    }
    default:
      throw ShapeError("plan_blocks: unsupported configuration " + cfg_str(c));
  }
  return p;
}

}  // namespace

std::string CaseTag::name() const {
  std::string base;
  switch (label) {
    case CaseLabel::kA: base = "A"; break;
    case CaseLabel::kB1: base = "B1"; break;
    case CaseLabel::kB2: base = "B2"; break;
    case CaseLabel::kB3: base = "B3"; break;
    case CaseLabel::kC: base = "C"; break;
    case CaseLabel::kUnsupported: return "unsupported";
  }
  if (scenario == Scenario::kReceiveRich) base += "'";
  return base;
}

CaseTag classify(const AntennaConfig& cfg) {
  if (cfg.transmit_rich_ordering()) return classify_transmit_rich(cfg);
  if (cfg.receive_rich_ordering()) return classify_receive_rich(cfg);
  throw OrderingError("configuration " + cfg_str(cfg) +
                      " fits neither M1>=M2>=N1>=N2 nor N1>=N2>=M1>=M2");
}

CaseTag classify_in(const AntennaConfig& cfg, Scenario scenario) {
  if (scenario == Scenario::kTransmitRich) {
    if (!cfg.transmit_rich_ordering())
      throw OrderingError("configuration " + cfg_str(cfg) + " is not transmit-rich");
    return classify_transmit_rich(cfg);
  }
  if (!cfg.receive_rich_ordering())
    throw OrderingError("configuration " + cfg_str(cfg) + " is not receive-rich");
  return classify_receive_rich(cfg);
}

BlockPlan plan_blocks(const AntennaConfig& cfg, const CaseTag& tag) {
  if (!tag.supported())
    throw ShapeError("plan_blocks: unsupported configuration " + cfg_str(cfg));
  BlockPlan p = (tag.scenario == Scenario::kTransmitRich) ? plan_transmit_rich(cfg, tag)
                                                          : plan_receive_rich(cfg, tag);
  p.bound = outer_bound(cfg, tag);
  return p;
}

Rational outer_bound(const AntennaConfig& cfg, const CaseTag& tag) {
  if (!tag.supported())
    throw ShapeError("outer_bound: unsupported configuration " + cfg_str(cfg));
  if (tag.scenario == Scenario::kTransmitRich) {
    switch (tag.label) {
      case CaseLabel::kA: return Rational(cfg.m1 + cfg.m2 + cfg.n2, 2);
      case CaseLabel::kB1:
      case CaseLabel::kB2:
      case CaseLabel::kB3: return Rational(cfg.n1 + cfg.n2);
      default: return Rational(2 * (cfg.m1 + cfg.m2), 3);
    }
  }
  switch (tag.label) {
    case CaseLabel::kA: return Rational(cfg.n1 + cfg.n2 + cfg.m2, 2);
    case CaseLabel::kB1:
    case CaseLabel::kB2:
    case CaseLabel::kB3: return Rational(cfg.m1 + cfg.m2);
    default: return Rational(2 * (cfg.n1 + cfg.n2), 3);
  }
}

std::vector<AntennaConfig> all_valid_configs(int max_antennas) {
  std::vector<AntennaConfig> out;
  for (int m1 = 1; m1 <= max_antennas; ++m1)
    for (int m2 = 1; m2 <= max_antennas; ++m2)
      for (int n1 = 1; n1 <= max_antennas; ++n1)
        for (int n2 = 1; n2 <= max_antennas; ++n2) {
          const AntennaConfig c{m1, m2, n1, n2};
          if (c.transmit_rich_ordering() || c.receive_rich_ordering()) out.push_back(c);
        }
  return out;
}

}  // namespace xchan
