// Command-line front end: plan printing, table sweeps, verification runs,
// Monte Carlo simulation and the worked-example checks.
//
// Exit codes: 0 ok, 1 verification/check failure, 2 usage error.

#include <CLI11.hpp>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "xchan/json_io.hpp"
#include "xchan/sim.hpp"
#include "xchan/synth.hpp"
#include "xchan/verify.hpp"

namespace {

using namespace xchan;

enum class LogLevel { kQuiet = 0, kInfo = 1, kDebug = 2 };

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("XCHAN_LOG");
    if (env == nullptr) return LogLevel::kInfo;
    const std::string s(env);
    if (s == "quiet" || s == "0") return LogLevel::kQuiet;
    if (s == "debug" || s == "2") return LogLevel::kDebug;
    return LogLevel::kInfo;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::kInfo) std::cerr << msg << "\n";
}

void log_debug(const std::string& msg) {
  if (log_level() >= LogLevel::kDebug) std::cerr << msg << "\n";
}

// Writes to path, or to stdout when path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << text;
}

void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> workers;
  const int count = std::min(jobs, n);
  workers.reserve(count);
  for (int w = 0; w < count; ++w) {
    workers.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : workers) t.join();
}

std::string cfg_str(const AntennaConfig& c) {
  std::ostringstream os;
  os << "(" << c.m1 << "," << c.m2 << "," << c.n1 << "," << c.n2 << ")";
  return os.str();
}

std::string blocks_str(const std::array<int, 3>& b) {
  std::ostringstream os;
  os << "[" << b[0] << "," << b[1] << "," << b[2] << "]";
  return os.str();
}

int cmd_plan(const AntennaConfig& cfg, bool as_json, const std::string& out_path) {
  const CaseTag tag = classify(cfg);
  if (!tag.supported()) {
    std::cerr << "configuration " << cfg_str(cfg)
              << " cannot keep all four messages non-empty (unsupported)\n";
    return 2;
  }
  const BlockPlan plan = plan_blocks(cfg, tag);
  std::ostringstream os;
  if (as_json) {
    os << plan_to_json(cfg, tag, plan).dump(2) << "\n";
  } else {
    os << "config " << cfg_str(cfg) << "  scenario "
       << (tag.scenario == Scenario::kTransmitRich ? "transmit-rich" : "receive-rich")
       << "  case " << tag.name();
    if (tag.label == CaseLabel::kC) os << "  x=" << tag.x;
    os << "\n";
    os << "blocks: L=" << blocks_str(plan.l) << " K=" << blocks_str(plan.k)
       << " J=" << blocks_str(plan.j) << " G=" << blocks_str(plan.g) << "\n";
    os << "lengths: Q11=" << plan.q11() << " Q21=" << plan.q21() << " Q12=" << plan.q12()
       << " Q22=" << plan.q22() << "  streams=" << plan.total_streams() << "\n";
    os << "dof " << plan.dof.str() << "   outer bound " << plan.bound.str() << "   gap "
       << plan.gap().str() << "\n";
  }
  emit(out_path, os.str());
  return 0;
}

int cmd_sweep(int max_antennas, bool with_oracle, const std::string& out_path, int jobs) {
  const auto configs = all_valid_configs(max_antennas);
  struct Row {
    bool used = false;
    std::string text;
    bool oracle_mismatch = false;
  };
  std::vector<Row> rows(configs.size());
  std::atomic<int> skipped{0};
  parallel_for(static_cast<int>(configs.size()), jobs, [&](int i) {
    const AntennaConfig& cfg = configs[i];
    const CaseTag tag = classify(cfg);
    if (!tag.supported()) {
      skipped.fetch_add(1);
      return;
    }
    const BlockPlan plan = plan_blocks(cfg, tag);
    std::ostringstream os;
    os << cfg.m1 << "," << cfg.m2 << "," << cfg.n1 << "," << cfg.n2 << "," << tag.name() << ","
       << plan.dof.str() << "," << plan.bound.str() << "," << plan.gap().str();
    if (with_oracle) {
      const auto oracle = oracle_max_dof(cfg);
      os << "," << (oracle ? oracle->str() : "infeasible");
      rows[i].oracle_mismatch = !oracle || *oracle != plan.dof;
    }
    os << "\n";
    rows[i].used = true;
    rows[i].text = os.str();
  });

  std::ostringstream os;
  os << "m1,m2,n1,n2,case,dof,bound,gap";
  if (with_oracle) os << ",oracle_dof";
  os << "\n";
  int mismatches = 0;
  for (const auto& row : rows) {
    if (!row.used) continue;
    os << row.text;
    if (row.oracle_mismatch) ++mismatches;
  }
  emit(out_path, os.str());
  log_info("sweep: " + std::to_string(configs.size()) + " configs, " +
           std::to_string(skipped.load()) + " unsupported skipped");
  if (mismatches > 0) {
    std::cerr << mismatches << " oracle mismatches\n";
    return 1;
  }
  return 0;
}

int cmd_verify(const AntennaConfig& cfg, int seeds, std::uint64_t base_seed, int jobs,
               bool as_json, const std::string& out_path) {
  const CaseTag tag = classify(cfg);
  if (!tag.supported()) {
    std::cerr << "configuration " << cfg_str(cfg) << " is unsupported\n";
    return 2;
  }
  const BlockPlan plan = plan_blocks(cfg, tag);
  std::vector<int> pass(seeds, 0);
  std::mutex report_mutex;
  nlohmann::json first_failure;
  parallel_for(seeds, jobs, [&](int s) {
    const std::uint64_t seed = Rng::substream(base_seed, s);
    try {
      const ChannelSet ch = generate_channels(cfg, seed);
      const PrecoderSet pre = synthesize(ch, plan, Rng::substream(seed, 1));
      const VerificationReport rep = verify_all(ch, plan, pre, {});
      const bool ok = rep.all_ok() && rep.achieved_dof == plan.dof;
      pass[s] = ok ? 1 : 0;
      if (!ok) {
        std::lock_guard<std::mutex> lock(report_mutex);
        if (first_failure.is_null()) first_failure = report_to_json(rep);
      }
      log_debug("seed " + std::to_string(s) + (ok ? " pass" : " FAIL"));
    } catch (const Error& e) {
      pass[s] = 0;
      std::lock_guard<std::mutex> lock(report_mutex);
      if (first_failure.is_null()) first_failure = {{"error", e.what()}};
    }
  });
  int passed = 0;
  for (int p : pass) passed += p;

  std::ostringstream os;
  if (as_json) {
    nlohmann::json j;
    j["m1"] = cfg.m1;
    j["m2"] = cfg.m2;
    j["n1"] = cfg.n1;
    j["n2"] = cfg.n2;
    j["dof"] = plan.dof.str();
    j["seeds"] = seeds;
    j["passed"] = passed;
    if (!first_failure.is_null()) j["first_failure"] = first_failure;
    os << j.dump(2) << "\n";
  } else {
    os << passed << "/" << seeds << " pass\n";
    if (!first_failure.is_null()) os << "first failure: " << first_failure.dump() << "\n";
  }
  emit(out_path, os.str());
  return passed == seeds ? 0 : 1;
}

int cmd_examples(std::uint64_t base_seed) {
  const struct {
    AntennaConfig cfg;
    Rational dof;
  } rows[] = {
      {{2, 2, 2, 1}, Rational(5, 2)},  {{7, 6, 5, 4}, Rational(17, 2)},
      {{6, 3, 3, 3}, Rational(5)},     {{8, 4, 4, 3}, Rational(13, 2)},
      {{4, 4, 3, 2}, Rational(5)},     {{8, 7, 5, 5}, Rational(10)},
      {{5, 4, 4, 3}, Rational(6)},     {{7, 4, 4, 4}, Rational(7)},
      {{7, 6, 6, 5}, Rational(17, 2)},
  };
  bool all_ok = true;
  for (const auto& row : rows) {
    std::string status = "OK";
    try {
      const CaseTag tag = classify(row.cfg);
      const BlockPlan plan = plan_blocks(row.cfg, tag);
      if (plan.dof != row.dof) {
        status = "DOF MISMATCH (got " + plan.dof.str() + ")";
      } else {
        const ChannelSet ch = generate_channels(row.cfg, base_seed);
        const PrecoderSet pre = synthesize(ch, plan, Rng::substream(base_seed, 1));
        const VerificationReport rep = verify_all(ch, plan, pre, {});
        if (!rep.all_ok() || rep.achieved_dof != plan.dof) status = "VERIFY FAIL";
      }
    } catch (const Error& e) {
      status = std::string("ERROR: ") + e.what();
    }
    std::cout << cfg_str(row.cfg) << " dof=" << row.dof.str() << " " << status << "\n";
    all_ok = all_ok && status == "OK";
  }
  return all_ok ? 0 : 1;
}

int cmd_simulate(const std::string& config_path, bool as_csv, const std::string& out_path) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "cannot open config file " << config_path << "\n";
    return 2;
  }
  TrialConfig tc;
  try {
    nlohmann::json j;
    in >> j;
    tc = trial_config_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "bad config file: " << e.what() << "\n";
    return 2;
  }
  const TrialResult res = run_trials(tc);
  std::ostringstream os;
  if (as_csv) {
    os << "m1,m2,n1,n2,q,snr_db,ser,slope\n";
    for (std::size_t i = 0; i < res.snr_db.size(); ++i) {
      os << tc.cfg.m1 << "," << tc.cfg.m2 << "," << tc.cfg.n1 << "," << tc.cfg.n2 << ","
         << tc.constellation.q << "," << res.snr_db[i] << "," << res.aggregate_ser[i] << ","
         << res.dof_slope << "\n";
    }
  } else {
    os << trial_result_to_json(res).dump(2) << "\n";
  }
  emit(out_path, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2x2 MIMO X-channel interference alignment planner and simulator"};
  app.require_subcommand(1);

  AntennaConfig cfg;
  bool as_json = false;
  bool as_csv = false;
  std::string out_path;
  int max_antennas = 6;
  bool with_oracle = false;
  int seeds = 100;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string config_path;

  auto add_cfg_flags = [&cfg](CLI::App* cmd) {
    cmd->add_option("--m1", cfg.m1, "antennas at transmitter 1")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--m2", cfg.m2, "antennas at transmitter 2")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--n1", cfg.n1, "antennas at receiver 1")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--n2", cfg.n2, "antennas at receiver 2")->required()->check(CLI::PositiveNumber);
  };

  CLI::App* plan = app.add_subcommand("plan", "print the block-length plan for one configuration");
  add_cfg_flags(plan);
  plan->add_flag("--json", as_json, "emit JSON instead of text");
  plan->add_option("--out", out_path, "write output to a file instead of stdout");

  CLI::App* sweep = app.add_subcommand("sweep", "plan every valid configuration up to a size");
  sweep->add_option("--max-antennas", max_antennas, "antenna count limit")
      ->required()
      ->check(CLI::Range(1, 16));
  sweep->add_flag("--oracle", with_oracle,
                  "cross-check against the brute-force enumeration (limit 8)");
  sweep->add_option("--csv", out_path, "write CSV to this path (default stdout)");
  sweep->add_option("--out", out_path, "alias for --csv");
  sweep->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  CLI::App* verify = app.add_subcommand("verify", "synthesize and certify over random seeds");
  add_cfg_flags(verify);
  verify->add_option("--seeds", seeds, "number of random channel seeds")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "base seed");
  verify->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  verify->add_flag("--json", as_json, "emit a JSON summary");
  verify->add_option("--out", out_path, "write output to a file instead of stdout");

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo run from a JSON config");
  simulate->add_option("--config", config_path, "JSON file {m1,m2,n1,n2,Q,snr_db,trials,seed}")
      ->required();
  simulate->add_flag("--csv", as_csv, "emit CSV rows instead of JSON");
  simulate->add_option("--out", out_path, "write output to a file instead of stdout");

  CLI::App* examples = app.add_subcommand("examples", "run the nine worked configurations");
  examples->add_option("--seed", seed, "base seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (plan->parsed()) return cmd_plan(cfg, as_json, out_path);
    if (sweep->parsed()) {
      if (with_oracle && max_antennas > 8) {
        std::cerr << "--oracle is limited to --max-antennas <= 8\n";
        return 2;
      }
      return cmd_sweep(max_antennas, with_oracle, out_path, jobs);
    }
    if (verify->parsed()) return cmd_verify(cfg, seeds, seed, jobs, as_json, out_path);
    if (simulate->parsed()) return cmd_simulate(config_path, as_csv, out_path);
    if (examples->parsed()) return cmd_examples(seed);
  } catch (const OrderingError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 2;
}
