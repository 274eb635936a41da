#include <doctest.h>

#include "xchan/json_io.hpp"
#include "xchan/planner.hpp"

using namespace xchan;

namespace {

BlockPlan plan_of(int m1, int m2, int n1, int n2) {
  const AntennaConfig cfg{m1, m2, n1, n2};
  return plan_blocks(cfg, classify(cfg));
}

}  // namespace

TEST_CASE("classification of the worked configurations") {
  CHECK(classify({2, 2, 2, 1}) ==
        CaseTag{Scenario::kTransmitRich, CaseLabel::kA, 0});
  CHECK(classify({6, 3, 3, 3}) ==
        CaseTag{Scenario::kTransmitRich, CaseLabel::kB1, 0});
  CHECK(classify({8, 4, 4, 3}) ==
        CaseTag{Scenario::kTransmitRich, CaseLabel::kB2, 0});
  CHECK(classify({4, 4, 3, 2}) ==
        CaseTag{Scenario::kTransmitRich, CaseLabel::kB3, 0});
  CHECK(classify({7, 6, 6, 5}) ==
        CaseTag{Scenario::kTransmitRich, CaseLabel::kC, 2});
  CHECK(classify({5, 4, 4, 3}).x == 0);
  CHECK(classify({7, 4, 4, 4}).x == 1);
}

TEST_CASE("classification boundaries and rejects") {
  // doubly degenerate boundary M1+M2 = 3N2 = 2N1+N2 goes to case B
  CHECK(classify({4, 2, 2, 2}).label == CaseLabel::kB1);
  CHECK(classify({2, 1, 1, 1}).label == CaseLabel::kUnsupported);  // B1 with N1=1
  CHECK(classify({1, 1, 1, 1}).label == CaseLabel::kUnsupported);  // C with N1=1
  CHECK(classify({3, 1, 1, 1}).label == CaseLabel::kUnsupported);
  CHECK(classify({5, 5, 1, 1}).label == CaseLabel::kB3);  // B3 survives N1=1
  CHECK_THROWS_AS(classify({1, 2, 1, 1}), OrderingError);
  CHECK_THROWS_AS(classify({3, 1, 2, 2}), OrderingError);

  // receive-rich mirrors
  CHECK(classify({1, 1, 2, 1}).label == CaseLabel::kUnsupported);
  CHECK(classify({3, 3, 6, 3}) ==
        CaseTag{Scenario::kReceiveRich, CaseLabel::kB1, 0});
  CHECK(classify({4, 3, 8, 4}) ==
        CaseTag{Scenario::kReceiveRich, CaseLabel::kB2, 0});
  CHECK(classify({3, 2, 4, 4}).label == CaseLabel::kB3);
  CHECK(classify({5, 4, 7, 6}).label == CaseLabel::kA);

  // all-equal fits both orderings; transmit-rich wins, receive-rich on demand
  CHECK(classify({4, 4, 4, 4}).scenario == Scenario::kTransmitRich);
  CHECK(classify_in({4, 4, 4, 4}, Scenario::kReceiveRich).scenario ==
        Scenario::kReceiveRich);
  CHECK_THROWS_AS(classify_in({7, 6, 5, 4}, Scenario::kReceiveRich), OrderingError);
}

TEST_CASE("golden example block plans") {
  // (7,6,5,4): L=(3,2,0), K=(2,2,1), J=(2,2,0), G=(1,1,1), dof 17/2
  BlockPlan p = plan_of(7, 6, 5, 4);
  CHECK(p.l == std::array<int, 3>{3, 2, 0});
  CHECK(p.k == std::array<int, 3>{2, 2, 1});
  CHECK(p.j == std::array<int, 3>{2, 2, 0});
  CHECK(p.g == std::array<int, 3>{1, 1, 1});
  CHECK(p.dof == Rational(17, 2));

  // (8,4,4,3): L=(3,2,0), K=(2,2,1), J=(1,1,0), G=(0,0,1), dof 13/2
  p = plan_of(8, 4, 4, 3);
  CHECK(p.l == std::array<int, 3>{3, 2, 0});
  CHECK(p.k == std::array<int, 3>{2, 2, 1});
  CHECK(p.j == std::array<int, 3>{1, 1, 0});
  CHECK(p.g == std::array<int, 3>{0, 0, 1});
  CHECK(p.dof == Rational(13, 2));

  // (5,4,4,3): L=(2,2,0), K=(1,1,2), J=(1,1,0), G=(0,0,2), dof 6
  p = plan_of(5, 4, 4, 3);
  CHECK(p.l == std::array<int, 3>{2, 2, 0});
  CHECK(p.k == std::array<int, 3>{1, 1, 2});
  CHECK(p.j == std::array<int, 3>{1, 1, 0});
  CHECK(p.g == std::array<int, 3>{0, 0, 2});
  CHECK(p.dof == Rational(6));

  // (8,7,5,5): K1=K2=3, G1=G2=2, L1=L2=3, J1=J2=2, third blocks 0, dof 10
  p = plan_of(8, 7, 5, 5);
  CHECK(p.k == std::array<int, 3>{3, 3, 0});
  CHECK(p.g == std::array<int, 3>{2, 2, 0});
  CHECK(p.l == std::array<int, 3>{3, 3, 0});
  CHECK(p.j == std::array<int, 3>{2, 2, 0});
  CHECK(p.dof == Rational(10));

  // (2,2,2,1) and (6,3,3,3)
  p = plan_of(2, 2, 2, 1);
  CHECK(p.l == std::array<int, 3>{1, 0, 0});
  CHECK(p.k == std::array<int, 3>{0, 0, 1});
  CHECK(p.j == std::array<int, 3>{1, 1, 0});
  CHECK(p.g == std::array<int, 3>{0, 0, 1});
  CHECK(p.dof == Rational(5, 2));

  p = plan_of(6, 3, 3, 3);
  CHECK(p.l == std::array<int, 3>{2, 1, 1});
  CHECK(p.k == std::array<int, 3>{2, 1, 1});
  CHECK(p.j == std::array<int, 3>{0, 0, 1});
  CHECK(p.g == std::array<int, 3>{0, 0, 1});
  CHECK(p.dof == Rational(5));
}

TEST_CASE("golden DoF and outer bounds") {
  struct Row {
    int m1, m2, n1, n2;
    Rational dof;
  };
  const Row rows[] = {
      {2, 2, 2, 1, Rational(5, 2)},  {7, 6, 5, 4, Rational(17, 2)}, {6, 3, 3, 3, Rational(5)},
      {8, 4, 4, 3, Rational(13, 2)}, {4, 4, 3, 2, Rational(5)},     {8, 7, 5, 5, Rational(10)},
      {5, 4, 4, 3, Rational(6)},     {7, 4, 4, 4, Rational(7)},     {7, 6, 6, 5, Rational(17, 2)},
  };
  for (const auto& r : rows) {
    CHECK(plan_of(r.m1, r.m2, r.n1, r.n2).dof == r.dof);
  }
  CHECK(outer_bound({2, 2, 2, 1}, classify({2, 2, 2, 1})) == Rational(5, 2));
  CHECK(outer_bound({7, 4, 4, 4}, classify({7, 4, 4, 4})) == Rational(22, 3));
  CHECK(outer_bound({6, 3, 3, 3}, classify({6, 3, 3, 3})) == Rational(6));
  CHECK(outer_bound({7, 6, 6, 5}, classify({7, 6, 6, 5})) == Rational(26, 3));
}

TEST_CASE("plan feasibility invariants over all configs up to 8 antennas") {
  for (const auto& cfg : all_valid_configs(8)) {
    const CaseTag tag = classify(cfg);
    if (!tag.supported()) continue;
    const BlockPlan p = plan_blocks(cfg, tag);
    CAPTURE(cfg.m1);
    CAPTURE(cfg.m2);
    CAPTURE(cfg.n1);
    CAPTURE(cfg.n2);

    // every message carries at least one stream
    CHECK(p.q11() >= 1);
    CHECK(p.q21() >= 1);
    CHECK(p.q12() >= 1);
    CHECK(p.q22() >= 1);
    for (int i = 0; i < 3; ++i) {
      CHECK(p.l[i] >= 0);
      CHECK(p.k[i] >= 0);
      CHECK(p.j[i] >= 0);
      CHECK(p.g[i] >= 0);
    }
    CHECK(p.dof == Rational(p.total_streams(), 2));
    CHECK(p.dof <= p.bound);

    if (p.scenario == Scenario::kTransmitRich) {
      CHECK(p.k[1] <= p.k[0]);
      CHECK(p.k[0] <= cfg.m1 - cfg.n1);
      CHECK(p.g[1] <= p.g[0]);
      CHECK(p.g[0] <= cfg.m2 - cfg.n1);
      CHECK(p.j[1] <= p.j[0]);
      CHECK(p.j[0] <= cfg.m2 - cfg.n2);
      CHECK(p.l[1] <= p.l[0]);
      CHECK(p.l[0] <= cfg.m1 - cfg.n2);
      CHECK(p.k[2] <= p.g[2]);
      CHECK(p.g[2] <= cfg.n1);
      CHECK(p.l[2] <= p.j[2]);
      CHECK(p.j[2] <= cfg.n2);
      const int d1 = p.q11() + p.q12();
      const int d2 = p.q21() + p.q22();
      CHECK(d2 + p.j[2] <= 2 * cfg.n2);
      CHECK(d1 + p.g[2] <= 2 * cfg.n1);
      CHECK(d1 + p.k[2] <= 2 * cfg.n1);
      if (tag.label != CaseLabel::kC) {
        CHECK(p.k[2] == p.g[2]);
        CHECK(p.l[2] == p.j[2]);
        CHECK(d2 + p.j[2] == 2 * cfg.n2);  // budgets tight in cases A and B
        CHECK(d1 + p.k[2] == 2 * cfg.n1);
      }
      CHECK(p.q11() + p.q21() <= 2 * cfg.m1);
      CHECK(p.q12() + p.q22() <= 2 * cfg.m2);
    } else {
      CHECK(p.k[0] == p.g[0]);  // aligned pairs at R1
      CHECK(p.l[0] == p.j[0]);  // aligned pairs at R2
      CHECK(p.k[2] + p.g[2] + p.l[2] + p.j[2] == 0);
      CHECK(p.k[0] <= std::max(2 * (cfg.m1 + cfg.m2 - cfg.n1), 0));
      CHECK(p.l[0] <= std::max(2 * (cfg.m1 + cfg.m2 - cfg.n2), 0));
      CHECK(p.q11() + p.q21() <= 2 * cfg.m1);
      CHECK(p.q12() + p.q22() <= 2 * cfg.m2);
      CHECK(p.q11() + p.q12() + p.k[0] + p.k[1] + p.g[1] <= 2 * cfg.n1);
      CHECK(p.q21() + p.q22() + p.l[0] + p.l[1] + p.j[1] <= 2 * cfg.n2);
    }
  }
}

TEST_CASE("message lengths match the per-case closed forms") {
  for (const auto& cfg : all_valid_configs(8)) {
    const CaseTag tag = classify(cfg);
    if (!tag.supported()) continue;
    const BlockPlan p = plan_blocks(cfg, tag);
    const int m1 = cfg.m1, m2 = cfg.m2, n1 = cfg.n1, n2 = cfg.n2;
    int q11 = 0, q21 = 0, q12 = 0, q22 = 0;
    if (p.scenario == Scenario::kTransmitRich) {
      switch (tag.label) {
        case CaseLabel::kA:
          q11 = q21 = m1 - m2 + n2;
          q12 = 2 * (m2 - n2);
          q22 = m2 - m1 + n2;
          break;
        case CaseLabel::kB1:
          q11 = 2 * n1 - 2;
          q21 = 2 * n2 - 2;
          q12 = q22 = 1;
          break;
        case CaseLabel::kB2:
          q11 = q21 = 2 * n2 - 1;
          q12 = 2 * (m2 - n2);
          q22 = 1;
          break;
        case CaseLabel::kB3:
          q12 = std::min(2 * (m2 - n2), n1);
          q11 = 2 * n1 - q12;
          q22 = std::min(2 * (m2 - n1), n2);
          q21 = 2 * n2 - q22;
          break;
        default: {
          const int x = tag.x;
          q11 = q21 = 2 * (m1 - n2) + (2 * x) / 3;
          q12 = m2 + n2 - m1 - (x + 1) / 3;
          q22 = m2 + n2 - m1 - x / 3;
          break;
        }
      }
    } else {
      switch (tag.label) {
        case CaseLabel::kA:
          q11 = q12 = n1 - n2 + m2;
          q21 = 2 * (n2 - m2);
          q22 = n2 - n1 + m2;
          break;
        case CaseLabel::kB1:
          q11 = q12 = 2 * m2 - 2;
          q21 = q22 = 1;
          break;
        case CaseLabel::kB2:
          q11 = q12 = 2 * m2 - 1;
          q21 = 2 * (n2 - m2);
          q22 = 1;
          break;
        case CaseLabel::kB3:
          q21 = std::min(2 * (n2 - m2), m1);
          q11 = 2 * m1 - q21;
          q22 = std::min(2 * (n2 - m1), m2);
          q12 = 2 * m2 - q22;
          break;
        default: {
          const int x = tag.x;
          q11 = q12 = 2 * (n1 - m2) + (2 * x) / 3;
          q21 = n2 + m2 - n1 - (x + 1) / 3;
          q22 = n2 + m2 - n1 - x / 3;
          break;
        }
      }
    }
    CAPTURE(cfg.m1);
    CAPTURE(cfg.m2);
    CAPTURE(cfg.n1);
    CAPTURE(cfg.n2);
    CHECK(p.q11() == q11);
    CHECK(p.q21() == q21);
    CHECK(p.q12() == q12);
    CHECK(p.q22() == q22);
  }
}

TEST_CASE("gap law over all configs up to 8 antennas") {
  for (const auto& cfg : all_valid_configs(8)) {
    const CaseTag tag = classify(cfg);
    if (!tag.supported()) continue;
    const BlockPlan p = plan_blocks(cfg, tag);
    CAPTURE(cfg.m1);
    CAPTURE(cfg.m2);
    CAPTURE(cfg.n1);
    CAPTURE(cfg.n2);
    switch (tag.label) {
      case CaseLabel::kA:
      case CaseLabel::kB3:
        CHECK(p.gap() == Rational(0));
        break;
      case CaseLabel::kB2:
        CHECK(p.gap() == Rational(1, 2));
        break;
      case CaseLabel::kB1:
        CHECK(p.gap() == Rational(1));
        break;
      case CaseLabel::kC: {
        const Rational expected = tag.x % 3 == 0   ? Rational(0)
                                  : tag.x % 3 == 1 ? Rational(1, 3)
                                                   : Rational(1, 6);
        CHECK(p.gap() == expected);
        break;
      }
      default:
        break;
    }
  }
}

TEST_CASE("unsupported configurations are exactly the degenerate ones") {
  // transmit-rich: (m,1,1,1) with m >= 2 (case B1 needs N1 > 1) and
  // (1,1,1,1); receive-rich mirror: (1,1,n,1) with n >= 2.
  for (const auto& cfg : all_valid_configs(8)) {
    const CaseTag tag = classify(cfg);
    const bool degenerate_tr = cfg.m2 == 1 && cfg.n1 == 1 && cfg.n2 == 1;
    const bool degenerate_rr = cfg.m1 == 1 && cfg.m2 == 1 && cfg.n2 == 1;
    CAPTURE(cfg.m1);
    CAPTURE(cfg.m2);
    CAPTURE(cfg.n1);
    CAPTURE(cfg.n2);
    CHECK(tag.supported() == !(degenerate_tr || degenerate_rr));
  }
}

TEST_CASE("transmit/receive symmetry: swapped configs plan transposed lengths") {
  for (const auto& cfg : all_valid_configs(8)) {
    if (!cfg.transmit_rich_ordering()) continue;
    const CaseTag tag = classify_in(cfg, Scenario::kTransmitRich);
    const AntennaConfig sw = cfg.swapped();
    const CaseTag swtag = classify_in(sw, Scenario::kReceiveRich);
    CHECK(tag.supported() == swtag.supported());
    if (!tag.supported()) continue;
    const BlockPlan p = plan_blocks(cfg, tag);
    const BlockPlan q = plan_blocks(sw, swtag);
    CAPTURE(cfg.m1);
    CAPTURE(cfg.m2);
    CAPTURE(cfg.n1);
    CAPTURE(cfg.n2);
    CHECK(p.dof == q.dof);
    CHECK(q.q11() == p.q11());
    CHECK(q.q21() == p.q12());
    CHECK(q.q12() == p.q21());
    CHECK(q.q22() == p.q22());
  }
}

TEST_CASE("plan JSON round trip") {
  const AntennaConfig cfg{7, 6, 5, 4};
  const CaseTag tag = classify(cfg);
  const BlockPlan p = plan_blocks(cfg, tag);
  const auto j = plan_to_json(cfg, tag, p);
  CHECK(j.at("dof").get<std::string>() == "17/2");
  CHECK(j.at("case").get<std::string>() == "A");
  CHECK(plan_from_json(j) == p);

  const AntennaConfig rcfg{4, 3, 8, 4};
  const CaseTag rtag = classify(rcfg);
  const BlockPlan rp = plan_blocks(rcfg, rtag);
  CHECK(rtag.name() == "B2'");
  CHECK(plan_from_json(plan_to_json(rcfg, rtag, rp)) == rp);
}

TEST_CASE("rational arithmetic") {
  CHECK(Rational(26, 3) - Rational(17, 2) == Rational(1, 6));
  CHECK(Rational(4, 8).str() == "1/2");
  CHECK(Rational(-3, -6) == Rational(1, 2));
  CHECK(Rational(5).str() == "5");
  CHECK(Rational::parse("17/2") == Rational(17, 2));
  CHECK(Rational::parse("-4") == Rational(-4));
  CHECK(Rational(1, 3) < Rational(1, 2));
}
