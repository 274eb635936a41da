#pragma once

#include <nlohmann/json.hpp>

#include "xchan/planner.hpp"
#include "xchan/sim.hpp"
#include "xchan/verify.hpp"

namespace xchan {

/// Plan object: scenario, case, block lengths, message lengths, exact DoF
/// strings. plan_from_json inverts it bit-exactly.
nlohmann::json plan_to_json(const AntennaConfig& cfg, const CaseTag& tag, const BlockPlan& plan);
BlockPlan plan_from_json(const nlohmann::json& j);

/// Report object: condition -> {ok, residual}, plus ranks, budgets and the
/// achieved DoF as an exact string.
nlohmann::json report_to_json(const VerificationReport& rep);

nlohmann::json trial_result_to_json(const TrialResult& res);

/// Parses {m1,m2,n1,n2,Q,snr_db:[...],trials,seed}; c defaults to 2Q+1.
TrialConfig trial_config_from_json(const nlohmann::json& j);

}  // namespace xchan
