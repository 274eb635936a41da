#include <benchmark/benchmark.h>

#include "xchan/synth.hpp"
#include "xchan/verify.hpp"

using namespace xchan;

namespace {

void BM_RealifyMatrix(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const ChannelSet ch = generate_channels({n, n, n, n}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(realify_matrix(ch.h11));
}
BENCHMARK(BM_RealifyMatrix)->Arg(4)->Arg(8);

void BM_NullSpace(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const ChannelSet ch = generate_channels({2 * n, 2 * n, n, n}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(null_space(ch.h11));
}
BENCHMARK(BM_NullSpace)->Arg(2)->Arg(4);

void BM_PlanAllConfigs(benchmark::State& state) {
  const auto configs = all_valid_configs(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    for (const auto& cfg : configs) {
      const CaseTag tag = classify(cfg);
      if (tag.supported()) benchmark::DoNotOptimize(plan_blocks(cfg, tag));
    }
  }
}
BENCHMARK(BM_PlanAllConfigs)->Arg(6)->Arg(8);

void BM_OracleMaxDof(benchmark::State& state) {
  const AntennaConfig cfg{6, 5, 5, 4};
  for (auto _ : state) benchmark::DoNotOptimize(oracle_max_dof(cfg));
}
BENCHMARK(BM_OracleMaxDof);

void BM_SynthVerifyTransmitRich(benchmark::State& state) {
  const AntennaConfig cfg{7, 6, 5, 4};
  const BlockPlan plan = plan_blocks(cfg, classify(cfg));
  const ChannelSet ch = generate_channels(cfg, 11);
  for (auto _ : state) {
    const PrecoderSet pre = synth_transmit_rich(ch, plan, 12);
    benchmark::DoNotOptimize(verify_all(ch, plan, pre, {}));
  }
}
BENCHMARK(BM_SynthVerifyTransmitRich);

void BM_SynthVerifyReceiveRich(benchmark::State& state) {
  const AntennaConfig cfg{5, 4, 7, 6};
  const BlockPlan plan = plan_blocks(cfg, classify(cfg));
  const ChannelSet ch = generate_channels(cfg, 11);
  for (auto _ : state) {
    const PrecoderSet pre = synth_receive_rich(ch, plan, 12);
    benchmark::DoNotOptimize(verify_all(ch, plan, pre, {}));
  }
}
BENCHMARK(BM_SynthVerifyReceiveRich);

}  // namespace

BENCHMARK_MAIN();
