#include <doctest.h>

#include "xchan/json_io.hpp"
#include "xchan/sim.hpp"

using namespace xchan;

TEST_CASE("noiseless-limit behavior at 60 dB") {
  TrialConfig tc;
  tc.cfg = {2, 2, 2, 1};
  tc.constellation = ConstellationParam::with_default_c(1);
  tc.snr_db = {60.0};
  tc.trials = 100;
  tc.seed = 2024;
  const TrialResult res = run_trials(tc);
  CHECK(res.aggregate_ser[0] <= 1e-3);
}

TEST_CASE("determinism: identical seed, identical result") {
  TrialConfig tc;
  tc.cfg = {4, 4, 3, 2};
  tc.snr_db = {20.0, 40.0};
  tc.trials = 10;
  tc.seed = 7;
  const TrialResult a = run_trials(tc);
  const TrialResult b = run_trials(tc);
  CHECK(a.aggregate_ser == b.aggregate_ser);
  CHECK(a.rate_sum == b.rate_sum);
  CHECK(a.dof_slope == b.dof_slope);
  CHECK(a.resynth_count == b.resynth_count);
}

TEST_CASE("SER is non-increasing over the sweep") {
  TrialConfig tc;
  tc.cfg = {5, 4, 4, 3};
  tc.snr_db = {10.0, 20.0, 30.0, 40.0, 50.0, 60.0};
  tc.trials = 20;
  tc.seed = 31;
  const TrialResult res = run_trials(tc);
  for (std::size_t i = 1; i < res.aggregate_ser.size(); ++i)
    CHECK(res.aggregate_ser[i] <= res.aggregate_ser[i - 1]);
}

TEST_CASE("slope estimate tracks the planned DoF") {
  TrialConfig tc;
  tc.cfg = {4, 4, 3, 2};
  tc.snr_db = {30.0, 40.0, 50.0, 60.0};
  tc.trials = 30;
  tc.seed = 5;
  const TrialResult res = run_trials(tc);
  CHECK(res.plan_dof == Rational(5));
  CHECK(res.dof_slope == doctest::Approx(5.0).epsilon(0.15));
}

TEST_CASE("config validation") {
  TrialConfig tc;
  tc.cfg = {2, 2, 2, 1};
  tc.snr_db = {};
  CHECK_THROWS_AS(run_trials(tc), DomainError);
  tc.snr_db = {20.0, 10.0};
  CHECK_THROWS_AS(run_trials(tc), DomainError);
  tc.snr_db = {10.0};
  tc.trials = 0;
  CHECK_THROWS_AS(run_trials(tc), DomainError);
}

TEST_CASE("trial config JSON parsing") {
  const auto j = nlohmann::json::parse(
      R"({"m1":4,"m2":4,"n1":3,"n2":2,"Q":2,"snr_db":[30,60],"trials":5,"seed":9})");
  const TrialConfig tc = trial_config_from_json(j);
  CHECK(tc.cfg == AntennaConfig{4, 4, 3, 2});
  CHECK(tc.constellation.q == 2);
  CHECK(tc.constellation.c == 5);
  CHECK(tc.trials == 5);
  CHECK(tc.seed == 9);

  TrialConfig tc2 = tc;
  tc2.snr_db = {30.0, 60.0};
  const TrialResult res = run_trials(tc2);
  const auto out = trial_result_to_json(res);
  CHECK(out.at("plan_dof").get<std::string>() == "5");
  CHECK(out.at("points").size() == 2);
}
