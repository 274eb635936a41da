#include "xchan/verify.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <vector>

namespace xchan {

namespace {

// sigma_2 / sigma_1 of a two-column stack; 0 when the pair is degenerate.
double pair_colinearity_residual(const RVec& a, const RVec& b) {
  RMat pair(a.size(), 2);
  pair.col(0) = a;
  pair.col(1) = b;
  Eigen::JacobiSVD<RMat> svd(pair);
  const auto& sv = svd.singularValues();
  if (sv(0) <= 0.0) return 0.0;
  return sv(1) / sv(0);
}

double alignment_equality_residual(const RMat& h, const RVec& v, const RVec& dir) {
  const double scale = dir.norm();
  return (h * v - dir).norm() / (scale > 0.0 ? scale : 1.0);
}

struct AlignmentCheck {
  bool ok = true;
  double worst = 0.0;
  // Per aligned pair at each receiver: true when the pair collapses to one
  // direction, so the stack builder may deduplicate it.
  std::vector<bool> pair_ok_r1, pair_ok_r2;
};

AlignmentCheck check_alignment(const ChannelSet& ch, const PrecoderSet& pre,
                               const TolerancePolicy& pol) {
  AlignmentCheck out;
  const RMat h11b = realify_matrix(ch.h11);
  const RMat h12b = realify_matrix(ch.h12);
  const RMat h21b = realify_matrix(ch.h21);
  const RMat h22b = realify_matrix(ch.h22);
  if (pre.scenario == Scenario::kTransmitRich) {
    const auto& u21 = pre.cx[PrecoderSet::msg_index(2, 1)].u;
    const auto& u22 = pre.cx[PrecoderSet::msg_index(2, 2)].u;
    for (Eigen::Index i = 0; i < u21.cols(); ++i) {
      const double r = pair_colinearity_residual(h11b * realify_vector(u21.col(i)),
                                                 h12b * realify_vector(u22.col(i)));
      out.worst = std::max(out.worst, r);
      out.pair_ok_r1.push_back(r <= pol.rank_rel_tol);
    }
    const auto& u11 = pre.cx[PrecoderSet::msg_index(1, 1)].u;
    const auto& u12 = pre.cx[PrecoderSet::msg_index(1, 2)].u;
    for (Eigen::Index i = 0; i < u11.cols(); ++i) {
      const double r = pair_colinearity_residual(h21b * realify_vector(u11.col(i)),
                                                 h22b * realify_vector(u12.col(i)));
      out.worst = std::max(out.worst, r);
      out.pair_ok_r2.push_back(r <= pol.rank_rel_tol);
    }
  } else {
    const auto& v21 = pre.re[PrecoderSet::msg_index(2, 1)].v;
    const auto& v22 = pre.re[PrecoderSet::msg_index(2, 2)].v;
    for (Eigen::Index i = 0; i < v21.cols(); ++i) {
      const double r =
          std::max(alignment_equality_residual(h11b, v21.col(i), pre.align_r1.col(i)),
                   alignment_equality_residual(h12b, v22.col(i), pre.align_r1.col(i)));
      out.worst = std::max(out.worst, r);
      out.pair_ok_r1.push_back(r <= pol.residual_rel_tol);
    }
    const auto& v11 = pre.re[PrecoderSet::msg_index(1, 1)].v;
    const auto& v12 = pre.re[PrecoderSet::msg_index(1, 2)].v;
    for (Eigen::Index i = 0; i < v11.cols(); ++i) {
      const double r =
          std::max(alignment_equality_residual(h21b, v11.col(i), pre.align_r2.col(i)),
                   alignment_equality_residual(h22b, v12.col(i), pre.align_r2.col(i)));
      out.worst = std::max(out.worst, r);
      out.pair_ok_r2.push_back(r <= pol.residual_rel_tol);
    }
  }
  for (bool ok : out.pair_ok_r1) out.ok = out.ok && ok;
  for (bool ok : out.pair_ok_r2) out.ok = out.ok && ok;
  return out;
}

RMat hcat(std::initializer_list<RMat> parts) {
  Eigen::Index rows = 0, cols = 0;
  for (const auto& p : parts) {
    if (p.rows() > 0) rows = p.rows();
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

ReceiverStack build_stack_with_pairs(const ChannelSet& ch, const PrecoderSet& pre, int receiver,
                                     const std::vector<bool>& pair_ok) {
  ReceiverStack out;
  const RMat ha = realify_matrix(ch.h(receiver, 1));
  const RMat hb = realify_matrix(ch.h(receiver, 2));
  const int other = receiver == 1 ? 2 : 1;

  const RMat desired = hcat({ha * pre.real_group(receiver, 1, 0), ha * pre.real_group(receiver, 1, 1),
                             ha * pre.real_group(receiver, 1, 2), hb * pre.real_group(receiver, 2, 0),
                             hb * pre.real_group(receiver, 2, 1), hb * pre.real_group(receiver, 2, 2)});
  out.desired_cols = static_cast<int>(desired.cols());

  std::vector<RVec> intf;
  if (pre.scenario == Scenario::kTransmitRich) {
    // Interference at this receiver: the u blocks of the other receiver's
    // messages. The first |pair_ok| indices are aligned pairs; a passing pair
    // contributes its shared direction once, a broken pair both columns.
    const RMat ua = ha * pre.real_group(other, 1, 2);
    const RMat ub = hb * pre.real_group(other, 2, 2);
    const int aligned = static_cast<int>(pair_ok.size());
    for (int i = 0; i < aligned; ++i) {
      intf.push_back(ua.col(i));
      if (!pair_ok[i]) intf.push_back(ub.col(i));
    }
    for (Eigen::Index i = aligned; i < ub.cols(); ++i) intf.push_back(ub.col(i));
  } else {
    const RMat& dirs = receiver == 1 ? pre.align_r1 : pre.align_r2;
    const RMat va = ha * pre.real_group(other, 1, 0);
    const RMat vb = hb * pre.real_group(other, 2, 0);
    for (Eigen::Index i = 0; i < dirs.cols(); ++i) {
      if (i < static_cast<Eigen::Index>(pair_ok.size()) && pair_ok[i]) {
        intf.push_back(dirs.col(i));
      } else {
        intf.push_back(va.col(i));
        intf.push_back(vb.col(i));
      }
    }
    const RMat wa = ha * pre.real_group(other, 1, 1);
    const RMat wb = hb * pre.real_group(other, 2, 1);
    for (Eigen::Index i = 0; i < wa.cols(); ++i) intf.push_back(wa.col(i));
    for (Eigen::Index i = 0; i < wb.cols(); ++i) intf.push_back(wb.col(i));
  }
  out.interference_cols = static_cast<int>(intf.size());

  out.a.resize(desired.rows(), desired.cols() + out.interference_cols);
  out.a.leftCols(desired.cols()) = desired;
  for (int i = 0; i < out.interference_cols; ++i) out.a.col(desired.cols() + i) = intf[i];
  return out;
}

// Desired columns recoverable by linear elimination: column i is recoverable
// iff it is not in the span of all the other columns.
int count_decodable(const RMat& stack, int desired_cols, const TolerancePolicy& pol) {
  const Eigen::Index full = numeric_rank(stack, pol);
  if (full == stack.cols()) return desired_cols;
  int count = 0;
  for (int i = 0; i < desired_cols; ++i) {
    RMat rest(stack.rows(), stack.cols() - 1);
    rest.leftCols(i) = stack.leftCols(i);
    rest.rightCols(stack.cols() - 1 - i) = stack.rightCols(stack.cols() - 1 - i);
    if (numeric_rank(rest, pol) + 1 == full) ++count;
  }
  return count;
}

}  // namespace

ReceiverStack build_receiver_stack(const ChannelSet& ch, const PrecoderSet& pre, int receiver,
                                   const TolerancePolicy& pol) {
  const AlignmentCheck al = check_alignment(ch, pre, pol);
  return build_stack_with_pairs(ch, pre, receiver,
                                receiver == 1 ? al.pair_ok_r1 : al.pair_ok_r2);
}

VerificationReport verify_all(const ChannelSet& ch, const BlockPlan& plan,
                              const PrecoderSet& pre, const TolerancePolicy& pol) {
  pol.validate();
  if (pre.scenario != plan.scenario)
    throw ShapeError("verify_all: precoder scenario does not match plan");
  const std::array<std::array<int, 3>, 4> want = {plan.l, plan.k, plan.j, plan.g};
  static constexpr int kRec[4] = {1, 2, 1, 2};
  static constexpr int kTx[4] = {1, 1, 2, 2};
  for (int m = 0; m < 4; ++m)
    for (int grp = 0; grp < 3; ++grp)
      if (pre.group_cols(kRec[m], kTx[m], grp) != want[m][grp])
        throw ShapeError("verify_all: precoder group sizes do not match plan");

  VerificationReport rep;

  // (a) nulling residuals of every null-space precoder (transmit-rich only;
  // the receive-rich scheme has no nulled groups).
  double worst_null = 0.0;
  if (pre.scenario == Scenario::kTransmitRich) {
    const auto check_null = [&](const CMat& h, const CMat& cols) {
      for (Eigen::Index i = 0; i < cols.cols(); ++i)
        worst_null = std::max(worst_null, nulling_residual(h, CVec(cols.col(i))));
    };
    check_null(ch.h11, pre.cx[PrecoderSet::msg_index(2, 1)].v);
    check_null(ch.h11, pre.cx[PrecoderSet::msg_index(2, 1)].w);
    check_null(ch.h12, pre.cx[PrecoderSet::msg_index(2, 2)].v);
    check_null(ch.h12, pre.cx[PrecoderSet::msg_index(2, 2)].w);
    check_null(ch.h21, pre.cx[PrecoderSet::msg_index(1, 1)].v);
    check_null(ch.h21, pre.cx[PrecoderSet::msg_index(1, 1)].w);
    check_null(ch.h22, pre.cx[PrecoderSet::msg_index(1, 2)].v);
    check_null(ch.h22, pre.cx[PrecoderSet::msg_index(1, 2)].w);
  }
  rep.residuals["nulling"] = worst_null;
  rep.nulling_ok = worst_null <= pol.residual_rel_tol;

  // (b) j-pairing exactness (transmit-rich only).
  double worst_pair = 0.0;
  if (pre.scenario == Scenario::kTransmitRich) {
    for (int m = 0; m < 4; ++m) {
      const auto& mp = pre.cx[m];
      for (Eigen::Index i = 0; i < mp.w.cols(); ++i) {
        const RVec diff =
            realify_vector(mp.w.col(i)) - jrotate(realify_vector(mp.v.col(i)));
        worst_pair = std::max(worst_pair, diff.norm());
      }
    }
  }
  rep.residuals["pairing"] = worst_pair;
  rep.pairing_ok = worst_pair <= pol.residual_rel_tol;

  // (c) alignment: colinear pairs (transmit-rich) or shared-direction
  // equalities (receive-rich).
  const AlignmentCheck al = check_alignment(ch, pre, pol);
  rep.residuals["alignment"] = al.worst;
  rep.alignment_ok = al.ok;

  // (d) per-transmitter realified precoder matrices have full column rank.
  const RMat t1 = hcat({pre.real_group(1, 1, 0), pre.real_group(1, 1, 1), pre.real_group(1, 1, 2),
                        pre.real_group(2, 1, 0), pre.real_group(2, 1, 1), pre.real_group(2, 1, 2)});
  const RMat t2 = hcat({pre.real_group(1, 2, 0), pre.real_group(1, 2, 1), pre.real_group(1, 2, 2),
                        pre.real_group(2, 2, 0), pre.real_group(2, 2, 1), pre.real_group(2, 2, 2)});
  const int rank_t1 = static_cast<int>(numeric_rank(t1, pol));
  const int rank_t2 = static_cast<int>(numeric_rank(t2, pol));
  rep.ranks["tx1_precoder"] = rank_t1;
  rep.ranks["tx2_precoder"] = rank_t2;
  rep.tx_rank_ok = rank_t1 == t1.cols() && rank_t2 == t2.cols();

  // (e)+(f) receiver stacks: maximal rank and the dimension budgets.
  const ReceiverStack s1 = build_stack_with_pairs(ch, pre, 1, al.pair_ok_r1);
  const ReceiverStack s2 = build_stack_with_pairs(ch, pre, 2, al.pair_ok_r2);
  const int rank_r1 = static_cast<int>(numeric_rank(s1.a, pol));
  const int rank_r2 = static_cast<int>(numeric_rank(s2.a, pol));
  rep.ranks["rx1_stack"] = rank_r1;
  rep.ranks["rx2_stack"] = rank_r2;
  rep.rx1_rank_ok = rank_r1 == std::min(s1.a.rows(), s1.a.cols());
  rep.rx2_rank_ok = rank_r2 == std::min(s2.a.rows(), s2.a.cols());
  rep.budget_r1 = {static_cast<int>(s1.a.cols()), 2 * ch.cfg.n1};
  rep.budget_r2 = {static_cast<int>(s2.a.cols()), 2 * ch.cfg.n2};

  // (g) achieved DoF: half the desired real streams recoverable by linear
  // elimination.
  const int dec1 = count_decodable(s1.a, s1.desired_cols, pol);
  const int dec2 = count_decodable(s2.a, s2.desired_cols, pol);
  rep.achieved_dof = Rational(dec1 + dec2, 2);

  // Passing conditions within 10x of their tolerance are flagged; the rank
  // threshold cannot distinguish extreme conditioning from deficiency.
  for (const auto& [name, value] : rep.residuals) {
    if (value <= pol.residual_rel_tol && value > 0.1 * pol.residual_rel_tol)
      rep.warnings.push_back(name + " residual within 10x of tolerance");
  }
  const auto rank_margin = [&pol](const RMat& m) {
    if (m.rows() == 0 || m.cols() == 0) return false;
    Eigen::JacobiSVD<RMat> svd(m);
    const auto& sv = svd.singularValues();
    const double smallest = sv.tail(1)(0);
    return smallest > pol.rank_rel_tol * sv(0) && smallest <= 10.0 * pol.rank_rel_tol * sv(0);
  };
  if (rank_margin(s1.a)) rep.warnings.push_back("rx1 stack rank within 10x of tolerance");
  if (rank_margin(s2.a)) rep.warnings.push_back("rx2 stack rank within 10x of tolerance");
  return rep;
}

RVec decode_zero_forcing(const ChannelSet& ch, const PrecoderSet& pre, const RVec& received,
                         int receiver, const TolerancePolicy& pol) {
  const ReceiverStack s = build_receiver_stack(ch, pre, receiver, pol);
  if (s.a.rows() != received.size())
    throw ShapeError("decode_zero_forcing: received vector has wrong length");
  if (numeric_rank(s.a, pol) < s.a.cols())
    throw UnsolvableError("decode_zero_forcing: receiver stack is rank-deficient");
  Eigen::JacobiSVD<RMat> svd(s.a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVec coeffs = svd.solve(received);
  return coeffs.head(s.desired_cols);
}

}  // namespace xchan
