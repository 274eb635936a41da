#include <doctest.h>

#include "xchan/synth.hpp"

using namespace xchan;

namespace {

struct Built {
  ChannelSet ch;
  BlockPlan plan;
  PrecoderSet pre;
};

Built build(int m1, int m2, int n1, int n2, std::uint64_t seed) {
  const AntennaConfig cfg{m1, m2, n1, n2};
  Built b;
  b.plan = plan_blocks(cfg, classify(cfg));
  b.ch = generate_channels(cfg, seed);
  b.pre = synthesize(b.ch, b.plan, seed + 1);
  return b;
}

bool same_cmat(const CMat& a, const CMat& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a - b).norm() == 0.0;
}

}  // namespace

TEST_CASE("channel generation shapes, determinism and statistics") {
  const AntennaConfig cfg{2, 2, 2, 1};
  const ChannelSet ch = generate_channels(cfg, 7);
  CHECK(ch.h11.rows() == 2);
  CHECK(ch.h11.cols() == 2);
  CHECK(ch.h21.rows() == 1);
  CHECK(ch.h21.cols() == 2);
  CHECK(ch.h12.rows() == 2);
  CHECK(ch.h22.rows() == 1);

  const ChannelSet again = generate_channels(cfg, 7);
  CHECK(same_cmat(ch.h11, again.h11));
  CHECK(same_cmat(ch.h22, again.h22));
  CHECK(!same_cmat(ch.h11, generate_channels(cfg, 8).h11));

  // law of large numbers on the entry distribution
  Complex mean = 0.0;
  double var = 0.0;
  const int samples = 10000;
  Rng rng(99);
  for (int i = 0; i < samples; ++i) {
    const Complex z = rng.cgauss();
    mean += z;
    var += std::norm(z);
  }
  mean /= samples;
  var /= samples;
  CHECK(std::abs(mean) <= 0.05);
  CHECK(var == doctest::Approx(1.0).epsilon(0.10));
}

TEST_CASE("transmit-rich nulling residuals") {
  const TolerancePolicy pol{};
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    // (2,2,2,1): K1 = 0, the only nulled group is v11 against H21.
    Built b = build(2, 2, 2, 1, seed);
    CHECK(b.pre.cx[PrecoderSet::msg_index(2, 1)].v.cols() == 0);
    const auto& v11 = b.pre.cx[PrecoderSet::msg_index(1, 1)].v;
    REQUIRE(v11.cols() == 1);
    CHECK(nulling_residual(b.ch.h21, CVec(v11.col(0))) <= pol.residual_rel_tol);
  }
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Built b = build(7, 6, 5, 4, seed);
    const auto check_null = [&](const CMat& h, const CMat& cols) {
      for (Eigen::Index i = 0; i < cols.cols(); ++i)
        CHECK(nulling_residual(h, CVec(cols.col(i))) <= pol.residual_rel_tol);
    };
    check_null(b.ch.h11, b.pre.cx[PrecoderSet::msg_index(2, 1)].v);
    check_null(b.ch.h11, b.pre.cx[PrecoderSet::msg_index(2, 1)].w);
    check_null(b.ch.h12, b.pre.cx[PrecoderSet::msg_index(2, 2)].v);
    check_null(b.ch.h21, b.pre.cx[PrecoderSet::msg_index(1, 1)].v);
    check_null(b.ch.h22, b.pre.cx[PrecoderSet::msg_index(1, 2)].v);
  }
}

TEST_CASE("j-pairing is exact") {
  Built b = build(8, 7, 5, 5, 3);
  for (int m = 0; m < 4; ++m) {
    const auto& mp = b.pre.cx[m];
    for (Eigen::Index i = 0; i < mp.w.cols(); ++i) {
      const RVec diff = realify_vector(CVec(mp.w.col(i))) -
                        jrotate(realify_vector(CVec(mp.v.col(i))));
      CHECK(diff.norm() == 0.0);
    }
  }
}

TEST_CASE("transmit-rich alignment pairs are colinear in the real domain") {
  const TolerancePolicy pol{};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Built b = build(7, 6, 5, 4, seed);  // K3 = G3 = 1
    const RMat h11b = realify_matrix(b.ch.h11);
    const RMat h12b = realify_matrix(b.ch.h12);
    const auto& u21 = b.pre.cx[PrecoderSet::msg_index(2, 1)].u;
    const auto& u22 = b.pre.cx[PrecoderSet::msg_index(2, 2)].u;
    REQUIRE(u21.cols() == 1);
    RMat pair(2 * b.ch.cfg.n1, 2);
    pair.col(0) = h11b * realify_vector(CVec(u21.col(0)));
    pair.col(1) = h12b * realify_vector(CVec(u22.col(0)));
    CHECK(numeric_rank(pair, pol) == 1);
  }
}

TEST_CASE("case C extras stay unaligned and groups may be empty") {
  Built b = build(5, 4, 4, 3, 5);  // K3=2, G3=2, J3=0, L3=0, G1=G2=0
  CHECK(b.pre.cx[PrecoderSet::msg_index(2, 2)].v.cols() == 0);
  CHECK(b.pre.cx[PrecoderSet::msg_index(2, 2)].u.cols() == 2);
  CHECK(b.pre.cx[PrecoderSet::msg_index(1, 2)].u.cols() == 0);

  Built c = build(7, 6, 6, 5, 5);  // G3 = 4 > K3 = 3
  const auto& u22 = c.pre.cx[PrecoderSet::msg_index(2, 2)].u;
  REQUIRE(u22.cols() == 4);
  const RMat h11b = realify_matrix(c.ch.h11);
  const RMat h12b = realify_matrix(c.ch.h12);
  const auto& u21 = c.pre.cx[PrecoderSet::msg_index(2, 1)].u;
  for (int i = 0; i < 3; ++i) {
    RMat pair(2 * c.ch.cfg.n1, 2);
    pair.col(0) = h11b * realify_vector(CVec(u21.col(i)));
    pair.col(1) = h12b * realify_vector(CVec(u22.col(i)));
    CHECK(numeric_rank(pair) == 1);
  }
}

TEST_CASE("synthesis is deterministic in (channels, plan, seed)") {
  Built a = build(7, 6, 5, 4, 42);
  Built b = build(7, 6, 5, 4, 42);
  for (int m = 0; m < 4; ++m) {
    CHECK(same_cmat(a.pre.cx[m].v, b.pre.cx[m].v));
    CHECK(same_cmat(a.pre.cx[m].w, b.pre.cx[m].w));
    CHECK(same_cmat(a.pre.cx[m].u, b.pre.cx[m].u));
  }
}

TEST_CASE("per-transmitter realified precoders have full column rank") {
  const TolerancePolicy pol{};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Built b = build(7, 6, 6, 5, seed);
    for (int t = 1; t <= 2; ++t) {
      int cols = 0;
      for (int r = 1; r <= 2; ++r)
        for (int grp = 0; grp < 3; ++grp) cols += b.pre.group_cols(r, t, grp);
      RMat stack(2 * (t == 1 ? b.ch.cfg.m1 : b.ch.cfg.m2), cols);
      int at = 0;
      for (int r = 1; r <= 2; ++r)
        for (int grp = 0; grp < 3; ++grp) {
          const RMat part = b.pre.real_group(r, t, grp);
          stack.middleCols(at, part.cols()) = part;
          at += static_cast<int>(part.cols());
        }
      CHECK(numeric_rank(stack, pol) == cols);
    }
  }
}

TEST_CASE("receive-rich kernel triples: nullity arithmetic and residuals") {
  const TolerancePolicy pol{};
  const AntennaConfig cfg{3, 3, 4, 4};
  const BlockPlan plan = plan_blocks(cfg, classify(cfg));
  // nullity of the stacked alignment system [I -H11b 0; I 0 -H12b]:
  // 2*3 + 2*3 - 2*4 = 4
  {
    const ChannelSet ch = generate_channels(cfg, 123);
    RMat s(4 * cfg.n1, 2 * cfg.n1 + 2 * cfg.m1 + 2 * cfg.m2);
    s.setZero();
    s.topLeftCorner(2 * cfg.n1, 2 * cfg.n1).setIdentity();
    s.bottomLeftCorner(2 * cfg.n1, 2 * cfg.n1).setIdentity();
    s.block(0, 2 * cfg.n1, 2 * cfg.n1, 2 * cfg.m1) = -realify_matrix(ch.h11);
    s.block(2 * cfg.n1, 2 * cfg.n1 + 2 * cfg.m1, 2 * cfg.n1, 2 * cfg.m2) =
        -realify_matrix(ch.h12);
    CHECK(null_space(s).cols() == 4);
  }
  CHECK(plan.k[0] <= 4);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ChannelSet ch = generate_channels(cfg, seed);
    const PrecoderSet pre = synth_receive_rich(ch, plan, seed);
    const RMat h11b = realify_matrix(ch.h11);
    const RMat h12b = realify_matrix(ch.h12);
    const RMat h21b = realify_matrix(ch.h21);
    const RMat h22b = realify_matrix(ch.h22);
    const auto& m21 = pre.re[PrecoderSet::msg_index(2, 1)];
    const auto& m22 = pre.re[PrecoderSet::msg_index(2, 2)];
    for (Eigen::Index i = 0; i < m21.v.cols(); ++i) {
      const RVec dir = pre.align_r1.col(i);
      CHECK((h11b * m21.v.col(i) - dir).norm() <= pol.residual_rel_tol * dir.norm());
      CHECK((h12b * m22.v.col(i) - dir).norm() <= pol.residual_rel_tol * dir.norm());
    }
    const auto& m11 = pre.re[PrecoderSet::msg_index(1, 1)];
    const auto& m12 = pre.re[PrecoderSet::msg_index(1, 2)];
    for (Eigen::Index i = 0; i < m11.v.cols(); ++i) {
      const RVec dir = pre.align_r2.col(i);
      CHECK((h21b * m11.v.col(i) - dir).norm() <= pol.residual_rel_tol * dir.norm());
      CHECK((h22b * m12.v.col(i) - dir).norm() <= pol.residual_rel_tol * dir.norm());
    }
    // distinct aligned directions are linearly independent
    CHECK(numeric_rank(pre.align_r1, pol) == pre.align_r1.cols());
  }
}

TEST_CASE("receive-rich infeasible plan is rejected") {
  // N1 >= M1+M2 leaves an empty alignment kernel at R1; a plan demanding
  // aligned pairs there must be refused.
  const AntennaConfig cfg{2, 2, 5, 4};
  const CaseTag tag = classify(cfg);
  REQUIRE(tag.label == CaseLabel::kB3);
  BlockPlan plan = plan_blocks(cfg, tag);
  CHECK(plan.k[0] == 0);  // the planner already avoids them
  BlockPlan broken = plan;
  broken.k[0] = 1;
  broken.g[0] = 1;
  broken.k[1] -= 1;
  broken.g[1] -= 1;
  const ChannelSet ch = generate_channels(cfg, 3);
  CHECK_THROWS_AS(synth_receive_rich(ch, broken, 3), PlanInfeasibleError);
}

TEST_CASE("scenario mismatches raise ShapeError") {
  const AntennaConfig cfg{7, 6, 5, 4};
  const BlockPlan plan = plan_blocks(cfg, classify(cfg));
  const ChannelSet ch = generate_channels(cfg, 1);
  CHECK_THROWS_AS(synth_receive_rich(ch, plan, 1), ShapeError);

  const AntennaConfig other{4, 4, 3, 3};
  const ChannelSet wrong = generate_channels(other, 1);
  CHECK_THROWS_AS(synth_transmit_rich(wrong, plan_blocks(cfg, classify(cfg)), 1),
                  ShapeError);
}
