#include "xchan/sim.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <string>

#include "xchan/synth.hpp"

namespace xchan {

namespace {

// Noise variance of each zero-forcing coefficient estimate: the diagonal of
// (A^T A)^-1 scaled by the per-real-dimension noise variance 1/2.
std::vector<double> zf_noise_diag(const RMat& a) {
  Eigen::JacobiSVD<RMat> svd(a, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const RMat& v = svd.matrixV();
  std::vector<double> diag(a.cols(), 0.0);
  for (Eigen::Index i = 0; i < a.cols(); ++i) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < sv.size(); ++j) {
      const double s = sv(j);
      if (s > 0.0) acc += v(i, j) * v(i, j) / (s * s);
    }
    diag[i] = 0.5 * acc;
  }
  return diag;
}

// One stream = one real precoder column with its power-normalizing gain.
struct MessageStreams {
  RMat cols;                 // 2*Mt x Q_rt
  std::vector<double> gain;  // per column
};

}  // namespace

TrialResult run_trials(const TrialConfig& tc) {
  tc.validate();
  const CaseTag tag = classify(tc.cfg);
  if (!tag.supported())
    throw ShapeError("run_trials: unsupported antenna configuration");
  const BlockPlan plan = plan_blocks(tc.cfg, tag);
  const TolerancePolicy pol{};

  const auto codes = codebook(tc.constellation);
  const double msq = mean_square_code(tc.constellation);
  const int n_snr = static_cast<int>(tc.snr_db.size());

  TrialResult res;
  res.cfg = tc.cfg;
  res.plan_dof = plan.dof;
  res.snr_db = tc.snr_db;
  res.ser.assign(n_snr, {0.0, 0.0, 0.0, 0.0});
  res.aggregate_ser.assign(n_snr, 0.0);
  res.rate_sum.assign(n_snr, 0.0);

  std::array<std::int64_t, 4> msg_symbols{};
  std::vector<std::array<std::int64_t, 4>> errors(n_snr, {0, 0, 0, 0});

  static constexpr int kRec[4] = {1, 2, 1, 2};
  static constexpr int kTx[4] = {1, 1, 2, 2};

  for (int trial = 0; trial < tc.trials; ++trial) {
    const std::uint64_t trial_seed = Rng::substream(tc.seed, trial);

    ChannelSet ch;
    PrecoderSet pre;
    std::array<ReceiverStack, 2> stack;
    bool ready = false;
    for (int attempt = 0; attempt < kRedrawLimit && !ready; ++attempt) {
      const std::uint64_t draw_seed = Rng::substream(trial_seed, attempt);
      ch = generate_channels(tc.cfg, draw_seed);
      try {
        pre = synthesize(ch, plan, Rng::substream(draw_seed, 1), pol);
      } catch (const SynthesisError&) {
        ++res.resynth_count;
        continue;
      } catch (const PlanInfeasibleError& e) {
        throw PlanInfeasibleError("trial " + std::to_string(trial) + ": " + e.what());
      }
      if (!verify_all(ch, plan, pre, pol).all_ok()) {
        ++res.resynth_count;
        continue;
      }
      bool conditioned = true;
      for (int r = 0; r < 2 && conditioned; ++r) {
        stack[r] = build_receiver_stack(ch, pre, r + 1, pol);
        Eigen::JacobiSVD<RMat> svd(stack[r].a);
        const auto& sv = svd.singularValues();
        conditioned = sv.tail(1)(0) * tc.zf_condition_limit >= sv(0);
      }
      if (conditioned)
        ready = true;
      else
        ++res.resynth_count;
    }
    if (!ready)
      throw SynthesisError("run_trials: no verified channel draw for trial " +
                           std::to_string(trial));

    // Per-stream gains: each transmitter splits power rho evenly over its
    // streams, and the unit-mean-square code leaves per-stream power rho/S_t.
    const std::array<int, 2> tx_streams = {plan.q11() + plan.q21(), plan.q12() + plan.q22()};
    std::array<MessageStreams, 4> streams;
    for (int m = 0; m < 4; ++m) {
      streams[m].cols = RMat(2 * (kTx[m] == 1 ? tc.cfg.m1 : tc.cfg.m2), 0);
      for (int grp = 0; grp < 3; ++grp) {
        const RMat part = pre.real_group(kRec[m], kTx[m], grp);
        RMat merged(part.rows(), streams[m].cols.cols() + part.cols());
        merged << streams[m].cols, part;
        streams[m].cols = merged;
      }
      for (Eigen::Index i = 0; i < streams[m].cols.cols(); ++i)
        streams[m].gain.push_back(1.0 / (std::sqrt(tx_streams[kTx[m] - 1] * msq) *
                                         streams[m].cols.col(i).norm()));
      msg_symbols[m] += streams[m].cols.cols();
    }

    // Zero-forcing solver and noise amplification per stack (SNR independent).
    std::array<std::vector<double>, 2> zf_noise;
    std::array<Eigen::JacobiSVD<RMat>, 2> solver;
    for (int r = 0; r < 2; ++r) {
      zf_noise[r] = zf_noise_diag(stack[r].a);
      solver[r].compute(stack[r].a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    }
    const std::array<RMat, 2> hbar_r1 = {realify_matrix(ch.h11), realify_matrix(ch.h12)};
    const std::array<RMat, 2> hbar_r2 = {realify_matrix(ch.h21), realify_matrix(ch.h22)};

    // Common messages and noise across the sweep: every per-stream
    // perturbation then shrinks monotonically with SNR, and so does the SER.
    Rng rng(Rng::substream(trial_seed, 0x5157));
    std::array<std::vector<std::int64_t>, 4> sent;
    for (int m = 0; m < 4; ++m) {
      sent[m].resize(streams[m].cols.cols());
      for (auto& s : sent[m]) s = codes[rng.next_u64() % codes.size()];
    }
    std::array<RVec, 2> noise;
    for (int r = 0; r < 2; ++r) {
      noise[r] = RVec(2 * (r == 0 ? tc.cfg.n1 : tc.cfg.n2));
      for (Eigen::Index i = 0; i < noise[r].size(); ++i)
        noise[r](i) = rng.gauss() * std::numbers::sqrt2 / 2.0;
    }

    for (int si = 0; si < n_snr; ++si) {
      const double rho = std::pow(10.0, tc.snr_db[si] / 10.0);
      const double amp = std::sqrt(rho);

      std::array<RVec, 2> x;  // realified transmit signals
      x[0] = RVec::Zero(2 * tc.cfg.m1);
      x[1] = RVec::Zero(2 * tc.cfg.m2);
      for (int m = 0; m < 4; ++m)
        for (Eigen::Index i = 0; i < streams[m].cols.cols(); ++i)
          x[kTx[m] - 1] += streams[m].cols.col(i) *
                           (amp * streams[m].gain[i] * static_cast<double>(sent[m][i]));

      const std::array<RVec, 2> received = {
          RVec(hbar_r1[0] * x[0] + hbar_r1[1] * x[1] + noise[0]),
          RVec(hbar_r2[0] * x[0] + hbar_r2[1] * x[1] + noise[1])};

      for (int r = 0; r < 2; ++r) {
        const RVec coeffs = solver[r].solve(received[r]);
        int col = 0;
        for (int t = 1; t <= 2; ++t) {
          const int m = PrecoderSet::msg_index(r + 1, t);
          for (std::size_t i = 0; i < sent[m].size(); ++i, ++col) {
            const double g = amp * streams[m].gain[i];
            const double est = coeffs(col) / g;
            if (nearest_codeword(est, tc.constellation) != sent[m][i]) ++errors[si][m];
            const double sinr = g * g * msq / zf_noise[r][col];
            res.rate_sum[si] += 0.5 * std::log2(1.0 + sinr);
          }
        }
      }
    }
  }

  std::int64_t total_symbols = 0;
  for (int m = 0; m < 4; ++m) total_symbols += msg_symbols[m];
  for (int si = 0; si < n_snr; ++si) {
    std::int64_t total_err = 0;
    for (int m = 0; m < 4; ++m) {
      res.ser[si][m] =
          msg_symbols[m] > 0 ? static_cast<double>(errors[si][m]) / msg_symbols[m] : 0.0;
      total_err += errors[si][m];
    }
    res.aggregate_ser[si] = static_cast<double>(total_err) / total_symbols;
    res.rate_sum[si] /= tc.trials;
  }

  // Slope of the rate proxy against log2(SNR), fitted over the top half of
  // the sweep (at least two points).
  const int fit_count = std::max(2, n_snr - n_snr / 2);
  const int fit_from = std::max(0, n_snr - fit_count);
  if (n_snr >= 2) {
    const int n = n_snr - fit_from;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int si = fit_from; si < n_snr; ++si) {
      const double x = tc.snr_db[si] * std::log2(10.0) / 10.0;
      sx += x;
      sy += res.rate_sum[si];
      sxx += x * x;
      sxy += x * res.rate_sum[si];
    }
    res.dof_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return res;
}

}  // namespace xchan
