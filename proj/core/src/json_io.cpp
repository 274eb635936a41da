#include "xchan/json_io.hpp"

namespace xchan {

namespace {

std::string scenario_name(Scenario s) {
  return s == Scenario::kTransmitRich ? "transmit-rich" : "receive-rich";
}

Scenario scenario_from_name(const std::string& s) {
  if (s == "transmit-rich") return Scenario::kTransmitRich;
  if (s == "receive-rich") return Scenario::kReceiveRich;
  throw DomainError("unknown scenario '" + s + "'");
}

}  // namespace

nlohmann::json plan_to_json(const AntennaConfig& cfg, const CaseTag& tag, const BlockPlan& plan) {
  nlohmann::json j;
  j["m1"] = cfg.m1;
  j["m2"] = cfg.m2;
  j["n1"] = cfg.n1;
  j["n2"] = cfg.n2;
  j["scenario"] = scenario_name(plan.scenario);
  j["case"] = tag.name();
  if (tag.label == CaseLabel::kC) j["x"] = tag.x;
  j["blocks"] = {{"L", plan.l}, {"K", plan.k}, {"J", plan.j}, {"G", plan.g}};
  j["q"] = {{"q11", plan.q11()}, {"q21", plan.q21()}, {"q12", plan.q12()}, {"q22", plan.q22()}};
  j["dof"] = plan.dof.str();
  j["outer_bound"] = plan.bound.str();
  j["gap"] = plan.gap().str();
  return j;
}

BlockPlan plan_from_json(const nlohmann::json& j) {
  BlockPlan p;
  p.scenario = scenario_from_name(j.at("scenario").get<std::string>());
  const auto& b = j.at("blocks");
  p.l = b.at("L").get<std::array<int, 3>>();
  p.k = b.at("K").get<std::array<int, 3>>();
  p.j = b.at("J").get<std::array<int, 3>>();
  p.g = b.at("G").get<std::array<int, 3>>();
  p.dof = Rational::parse(j.at("dof").get<std::string>());
  p.bound = Rational::parse(j.at("outer_bound").get<std::string>());
  const auto& q = j.at("q");
  if (q.at("q11").get<int>() != p.q11() || q.at("q21").get<int>() != p.q21() ||
      q.at("q12").get<int>() != p.q12() || q.at("q22").get<int>() != p.q22())
    throw DomainError("plan_from_json: message lengths disagree with block lengths");
  return p;
}

nlohmann::json report_to_json(const VerificationReport& rep) {
  nlohmann::json cond;
  cond["nulling"] = {{"ok", rep.nulling_ok}, {"residual", rep.residuals.at("nulling")}};
  cond["pairing"] = {{"ok", rep.pairing_ok}, {"residual", rep.residuals.at("pairing")}};
  cond["alignment"] = {{"ok", rep.alignment_ok}, {"residual", rep.residuals.at("alignment")}};
  cond["tx_rank"] = {{"ok", rep.tx_rank_ok}};
  cond["rx1_rank"] = {{"ok", rep.rx1_rank_ok}};
  cond["rx2_rank"] = {{"ok", rep.rx2_rank_ok}};

  nlohmann::json j;
  j["conditions"] = cond;
  j["ranks"] = rep.ranks;
  j["budget_r1"] = {{"occupied", rep.budget_r1.occupied},
                    {"available", rep.budget_r1.available},
                    {"ok", rep.budget_r1.ok()}};
  j["budget_r2"] = {{"occupied", rep.budget_r2.occupied},
                    {"available", rep.budget_r2.available},
                    {"ok", rep.budget_r2.ok()}};
  j["achieved_dof"] = rep.achieved_dof.str();
  j["warnings"] = rep.warnings;
  j["pass"] = rep.all_ok();
  return j;
}

nlohmann::json trial_result_to_json(const TrialResult& res) {
  nlohmann::json j;
  j["m1"] = res.cfg.m1;
  j["m2"] = res.cfg.m2;
  j["n1"] = res.cfg.n1;
  j["n2"] = res.cfg.n2;
  j["plan_dof"] = res.plan_dof.str();
  j["dof_slope"] = res.dof_slope;
  j["resynth_count"] = res.resynth_count;
  j["slope_note"] = "slope of sum (1/2)log2(1+SINR) under zero-forcing, not true capacity";
  nlohmann::json points = nlohmann::json::array();
  for (std::size_t i = 0; i < res.snr_db.size(); ++i) {
    points.push_back({{"snr_db", res.snr_db[i]},
                      {"ser", res.ser[i]},
                      {"aggregate_ser", res.aggregate_ser[i]},
                      {"rate_sum", res.rate_sum[i]}});
  }
  j["points"] = points;
  return j;
}

TrialConfig trial_config_from_json(const nlohmann::json& j) {
  TrialConfig tc;
  tc.cfg = {j.at("m1").get<int>(), j.at("m2").get<int>(), j.at("n1").get<int>(),
            j.at("n2").get<int>()};
  const int q = j.at("Q").get<int>();
  tc.constellation = j.contains("c") ? ConstellationParam{q, j.at("c").get<int>()}
                                     : ConstellationParam::with_default_c(q);
  tc.snr_db = j.at("snr_db").get<std::vector<double>>();
  tc.trials = j.at("trials").get<int>();
  tc.seed = j.value("seed", 0ULL);
  tc.zf_condition_limit = j.value("zf_condition_limit", tc.zf_condition_limit);
  tc.validate();
  return tc;
}

}  // namespace xchan
