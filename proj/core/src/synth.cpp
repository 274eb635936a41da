#include "xchan/synth.hpp"

#include <numbers>
#include <string>

namespace xchan {

namespace {

CVec random_unit_cvec(Rng& rng, Eigen::Index dim) {
  CVec v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = rng.cgauss();
  return v / v.norm();
}

RVec random_unit_rvec(Rng& rng, Eigen::Index dim) {
  RVec v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = rng.gauss();
  return v / v.norm();
}

// count generic unit-norm combinations of the columns of basis.
CMat random_span_combos(Rng& rng, const CMat& basis, int count) {
  CMat out(basis.rows(), count);
  for (int c = 0; c < count; ++c) {
    CVec coeffs(basis.cols());
    for (Eigen::Index i = 0; i < basis.cols(); ++i) coeffs(i) = rng.cgauss();
    CVec v = basis * coeffs;
    out.col(c) = v / v.norm();
  }
  return out;
}

CMat jrotate_cols(const CMat& v, int count) {
  CMat out(v.rows(), count);
  for (int c = 0; c < count; ++c) out.col(c) = Complex(0.0, 1.0) * v.col(c);
  return out;
}

RMat realify_cols(const CMat& m) {
  RMat out(2 * m.rows(), m.cols());
  for (Eigen::Index c = 0; c < m.cols(); ++c) out.col(c) = realify_vector(m.col(c));
  return out;
}

void check_transmit_plan(const ChannelSet& ch, const BlockPlan& plan) {
  const auto& c = ch.cfg;
  const bool ok = plan.k[0] <= c.m1 - c.n1 && plan.k[1] <= plan.k[0] &&
                  plan.g[0] <= c.m2 - c.n1 && plan.g[1] <= plan.g[0] &&
                  plan.l[0] <= c.m1 - c.n2 && plan.l[1] <= plan.l[0] &&
                  plan.j[0] <= c.m2 - c.n2 && plan.j[1] <= plan.j[0] &&
                  plan.k[2] <= plan.g[2] && plan.g[2] <= c.n1 && plan.l[2] <= plan.j[2] &&
                  plan.j[2] <= c.n2 && plan.q11() + plan.q21() <= 2 * c.m1 &&
                  plan.q12() + plan.q22() <= 2 * c.m2;
  if (!ok)
    throw ShapeError("synth_transmit_rich: plan inconsistent with channel dimensions");
}

bool full_column_rank(const RMat& m, const TolerancePolicy& pol) {
  return numeric_rank(m, pol) == m.cols();
}

RMat hcat(std::initializer_list<RMat> parts) {
  Eigen::Index rows = 0, cols = 0;
  for (const auto& p : parts) {
    if (p.cols() > 0) rows = p.rows();
    cols += p.cols();
  }
  RMat out(rows, cols);
  Eigen::Index at = 0;
  for (const auto& p : parts) {
    if (p.cols() == 0) continue;
    out.middleCols(at, p.cols()) = p;
    at += p.cols();
  }
  return out;
}

}  // namespace

RMat PrecoderSet::real_group(int receiver, int transmitter, int group) const {
  const int idx = msg_index(receiver, transmitter);
  if (scenario == Scenario::kTransmitRich) {
    const auto& m = cx[idx];
    return realify_cols(group == 0 ? m.v : group == 1 ? m.w : m.u);
  }
  const auto& m = re[idx];
  if (group == 2) return RMat(m.v.rows(), 0);
  return group == 0 ? m.v : m.w;
}

int PrecoderSet::group_cols(int receiver, int transmitter, int group) const {
  const int idx = msg_index(receiver, transmitter);
  if (scenario == Scenario::kTransmitRich) {
    const auto& m = cx[idx];
    return static_cast<int>((group == 0 ? m.v : group == 1 ? m.w : m.u).cols());
  }
  const auto& m = re[idx];
  if (group == 2) return 0;
  return static_cast<int>((group == 0 ? m.v : m.w).cols());
}

PrecoderSet synth_transmit_rich(const ChannelSet& ch, const BlockPlan& plan, std::uint64_t seed,
                                const TolerancePolicy& pol) {
  if (plan.scenario != Scenario::kTransmitRich)
    throw ShapeError("synth_transmit_rich: plan is not transmit-rich");
  check_transmit_plan(ch, plan);
  const auto& c = ch.cfg;

  const CMat p11 = null_space(ch.h11, pol);
  const CMat p12 = null_space(ch.h12, pol);
  const CMat p21 = null_space(ch.h21, pol);
  const CMat p22 = null_space(ch.h22, pol);
  if (p11.cols() < plan.k[0] || p12.cols() < plan.g[0] || p21.cols() < plan.l[0] ||
      p22.cols() < plan.j[0])
    throw SynthesisError("synth_transmit_rich: channel null space smaller than planned");

  Rng rng(seed);
  for (int attempt = 0; attempt < kRedrawLimit; ++attempt) {
    PrecoderSet pre;
    pre.scenario = Scenario::kTransmitRich;
    auto& m11 = pre.cx[PrecoderSet::msg_index(1, 1)];
    auto& m21 = pre.cx[PrecoderSet::msg_index(2, 1)];
    auto& m12 = pre.cx[PrecoderSet::msg_index(1, 2)];
    auto& m22 = pre.cx[PrecoderSet::msg_index(2, 2)];

    m21.v = random_span_combos(rng, p11, plan.k[0]);
    m21.w = jrotate_cols(m21.v, plan.k[1]);
    m22.v = random_span_combos(rng, p12, plan.g[0]);
    m22.w = jrotate_cols(m22.v, plan.g[1]);
    m11.v = random_span_combos(rng, p21, plan.l[0]);
    m11.w = jrotate_cols(m11.v, plan.l[1]);
    m12.v = random_span_combos(rng, p22, plan.j[0]);
    m12.w = jrotate_cols(m12.v, plan.j[1]);

    // Aligned blocks: u21/u11 generic, the first K3/L3 partners solved so the
    // pair collapses to one direction at the unintended receiver; the extras
    // (G3-K3, J3-L3) are fresh unaligned draws.
    m21.u = CMat(c.m1, plan.k[2]);
    for (int i = 0; i < plan.k[2]; ++i) m21.u.col(i) = random_unit_cvec(rng, c.m1);
    m22.u = CMat(c.m2, plan.g[2]);
    for (int i = 0; i < plan.g[2]; ++i) {
      if (i < plan.k[2]) {
        CVec sol = solve_exact(ch.h12, CMat(ch.h11 * m21.u.col(i)), pol).col(0);
        m22.u.col(i) = sol / sol.norm();
      } else {
        m22.u.col(i) = random_unit_cvec(rng, c.m2);
      }
    }
    m11.u = CMat(c.m1, plan.l[2]);
    for (int i = 0; i < plan.l[2]; ++i) m11.u.col(i) = random_unit_cvec(rng, c.m1);
    m12.u = CMat(c.m2, plan.j[2]);
    for (int i = 0; i < plan.j[2]; ++i) {
      if (i < plan.l[2]) {
        CVec sol = solve_exact(ch.h22, CMat(ch.h21 * m11.u.col(i)), pol).col(0);
        m12.u.col(i) = sol / sol.norm();
      } else {
        m12.u.col(i) = random_unit_cvec(rng, c.m2);
      }
    }

    const RMat t1 = hcat({realify_cols(m11.v), realify_cols(m11.w), realify_cols(m11.u),
                          realify_cols(m21.v), realify_cols(m21.w), realify_cols(m21.u)});
    const RMat t2 = hcat({realify_cols(m12.v), realify_cols(m12.w), realify_cols(m12.u),
                          realify_cols(m22.v), realify_cols(m22.w), realify_cols(m22.u)});
    if (full_column_rank(t1, pol) && full_column_rank(t2, pol)) return pre;
  }
  throw SynthesisError("synth_transmit_rich: rank completion failed after " +
                       std::to_string(kRedrawLimit) + " redraws (seed " + std::to_string(seed) +
                       ")");
}

PrecoderSet synth_receive_rich(const ChannelSet& ch, const BlockPlan& plan, std::uint64_t seed,
                               const TolerancePolicy& pol) {
  if (plan.scenario != Scenario::kReceiveRich)
    throw ShapeError("synth_receive_rich: plan is not receive-rich");
  const auto& c = ch.cfg;
  if (plan.k[0] != plan.g[0] || plan.l[0] != plan.j[0] || plan.k[2] + plan.g[2] + plan.l[2] +
      plan.j[2] != 0)
    throw ShapeError("synth_receive_rich: plan is not a two-block receive-rich plan");
  if (plan.q11() + plan.q21() > 2 * c.m1 || plan.q12() + plan.q22() > 2 * c.m2)
    throw ShapeError("synth_receive_rich: plan exceeds transmitter dimensions");

  const RMat h11b = realify_matrix(ch.h11);
  const RMat h12b = realify_matrix(ch.h12);
  const RMat h21b = realify_matrix(ch.h21);
  const RMat h22b = realify_matrix(ch.h22);

  // Stacked alignment system at R1: [I -H11b 0; I 0 -H12b] z = 0 with
  // z = (h, V21, V22), so H11b*V21 = H12b*V22 = h.
  auto stacked_kernel = [&pol](const RMat& ha, const RMat& hb) {
    const Eigen::Index rows = ha.rows();
    RMat s(2 * rows, rows + ha.cols() + hb.cols());
    s.setZero();
    s.topLeftCorner(rows, rows) = RMat::Identity(rows, rows);
    s.bottomLeftCorner(rows, rows) = RMat::Identity(rows, rows);
    s.block(0, rows, rows, ha.cols()) = -ha;
    s.block(rows, rows + ha.cols(), rows, hb.cols()) = -hb;
    return null_space(s, pol);
  };
  const RMat ker1 = stacked_kernel(h11b, h12b);
  const RMat ker2 = stacked_kernel(h21b, h22b);
  if (ker1.cols() < plan.k[0])
    throw PlanInfeasibleError("synth_receive_rich: alignment kernel at R1 has " +
                              std::to_string(ker1.cols()) + " dimensions, plan needs " +
                              std::to_string(plan.k[0]));
  if (ker2.cols() < plan.l[0])
    throw PlanInfeasibleError("synth_receive_rich: alignment kernel at R2 has " +
                              std::to_string(ker2.cols()) + " dimensions, plan needs " +
                              std::to_string(plan.l[0]));

  Rng rng(seed);
  for (int attempt = 0; attempt < kRedrawLimit; ++attempt) {
    PrecoderSet pre;
    pre.scenario = Scenario::kReceiveRich;
    auto& m11 = pre.re[PrecoderSet::msg_index(1, 1)];
    auto& m21 = pre.re[PrecoderSet::msg_index(2, 1)];
    auto& m12 = pre.re[PrecoderSet::msg_index(1, 2)];
    auto& m22 = pre.re[PrecoderSet::msg_index(2, 2)];

    // Generic kernel combinations, one per aligned pair. The triple shares a
    // common scale (transmit part normalized jointly) so the equalities
    // H11b*V21 = H12b*V22 = h survive the rescaling.
    auto draw_triples = [&](const RMat& ker, Eigen::Index nr, Eigen::Index ma, Eigen::Index mb,
                            int count, RMat& va, RMat& vb, RMat& dirs) {
      va.resize(2 * ma, count);
      vb.resize(2 * mb, count);
      dirs.resize(2 * nr, count);
      for (int i = 0; i < count; ++i) {
        RVec z = ker * random_unit_rvec(rng, ker.cols());
        const double tnorm = z.tail(2 * (ma + mb)).norm();
        z *= std::numbers::sqrt2 / tnorm;
        dirs.col(i) = z.head(2 * nr);
        va.col(i) = z.segment(2 * nr, 2 * ma);
        vb.col(i) = z.tail(2 * mb);
      }
    };
    draw_triples(ker1, c.n1, c.m1, c.m2, plan.k[0], m21.v, m22.v, pre.align_r1);
    draw_triples(ker2, c.n2, c.m1, c.m2, plan.l[0], m11.v, m12.v, pre.align_r2);

    auto draw_unit_cols = [&rng](Eigen::Index rows, int count) {
      RMat m(rows, count);
      for (int i = 0; i < count; ++i) m.col(i) = random_unit_rvec(rng, rows);
      return m;
    };
    m21.w = draw_unit_cols(2 * c.m1, plan.k[1]);
    m11.w = draw_unit_cols(2 * c.m1, plan.l[1]);
    m22.w = draw_unit_cols(2 * c.m2, plan.g[1]);
    m12.w = draw_unit_cols(2 * c.m2, plan.j[1]);

    const RMat t1 = hcat({m21.v, m11.v, m21.w, m11.w});
    const RMat t2 = hcat({m12.v, m22.v, m12.w, m22.w});
    if (full_column_rank(t1, pol) && full_column_rank(t2, pol)) return pre;
  }
  throw SynthesisError("synth_receive_rich: rank completion failed after " +
                       std::to_string(kRedrawLimit) + " redraws (seed " + std::to_string(seed) +
                       ")");
}

PrecoderSet synthesize(const ChannelSet& ch, const BlockPlan& plan, std::uint64_t seed,
                       const TolerancePolicy& pol) {
  return plan.scenario == Scenario::kTransmitRich ? synth_transmit_rich(ch, plan, seed, pol)
                                                  : synth_receive_rich(ch, plan, seed, pol);
}

}  // namespace xchan
