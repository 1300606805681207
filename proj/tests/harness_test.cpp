// Copyright 2026 The sirtest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "sirtest/errors.hpp"
#include "sirtest/scenario.hpp"

namespace sirtest {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const fs::path kConfigs = SIRTEST_CONFIG_DIR;
const fs::path kTmp = SIRTEST_TEST_TMP;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json base_json() { return json::parse(slurp(kConfigs / "noisy_daily.json")); }

ScenarioConfig quick_config() {
  auto c = load_config(kConfigs / "noisy_daily.json");
  c.horizon = 200;
  return c;
}

TEST(Config, ShippedConfigsLoad) {
  const auto c = load_config(kConfigs / "noisy_daily.json");
  EXPECT_EQ(c.params.beta, 0.16);
  EXPECT_EQ(c.params.gamma, 0.033);
  EXPECT_EQ(c.constraints.u_min, 0.03);
  EXPECT_EQ(c.constraints.u_max, 0.15);
  EXPECT_EQ(c.constraints.i_bar, 0.01);
  EXPECT_EQ(c.initial.i, 1e-5);
  ASSERT_TRUE(c.noise);
  EXPECT_EQ(c.noise->snr_db, 55.0);
  EXPECT_EQ(c.policy_interval, 1.0);
  EXPECT_EQ(c.strategies.size(), 3u);
  EXPECT_EQ(load_config(kConfigs / "low_transmission.json").params.beta, 0.016);
  EXPECT_FALSE(load_config(kConfigs / "covering_envelope.json").noise);
}

TEST(Config, DumpParsesBackToSameConfig) {
  const auto c = load_config(kConfigs / "noisy_daily.json");
  const auto text = dump_config(c);
  EXPECT_EQ(dump_config(parse_config(text)), text);
}

TEST(Config, NoiseIsOptional) {
  auto j = base_json();
  j.erase("noise");
  EXPECT_FALSE(parse_config(j.dump()).noise);
  j["noise"] = nullptr;
  EXPECT_FALSE(parse_config(j.dump()).noise);
  j["noise"] = {{"snr_db", "inf"}, {"seed", 3}};
  EXPECT_FALSE(parse_config(j.dump()).noise);
}

void expect_config_error(const json& j, const std::string& needle) {
  try {
    parse_config(j.dump());
    ADD_FAILURE() << "accepted: " << j.dump();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
  }
}

TEST(Config, ErrorsNameTheField) {
  auto j = base_json();
  j["params"].erase("beta");
  expect_config_error(j, "params.beta");
  j = base_json();
  j["params"]["gamma"] = "fast";
  expect_config_error(j, "params.gamma");
  j = base_json();
  j.erase("constraints");
  expect_config_error(j, "constraints");
  j = base_json();
  j["constraints"]["u_min"] = 0.2;
  expect_config_error(j, "u_min");
  j = base_json();
  j["time"]["ode_step"] = 0.0;
  expect_config_error(j, "ode_step");
  j = base_json();
  j["strategies"] = json::array();
  expect_config_error(j, "strategies");
  j = base_json();
  j["strategies"] = {"optimal", "optimal"};
  expect_config_error(j, "duplicate");
  j = base_json();
  j["strategies"] = {"greedy"};
  expect_config_error(j, "greedy");
  j = base_json();
  j["estimation"]["method"] = "kalman";
  expect_config_error(j, "estimation.method");
  j = base_json();
  j["noise"]["seed"] = -4;
  expect_config_error(j, "noise.seed");
  j = base_json();
  j["initial"]["S"] = 0.5;
  expect_config_error(j, "sum");
  EXPECT_THROW(parse_config("{not json"), ConfigError);
  EXPECT_THROW(load_config(kTmp / "does_not_exist.json"), ConfigError);
}

TEST(Scenario, SingleStrategyHasNoComparisons) {
  auto c = quick_config();
  c.strategies = {PolicyKind::kOptimal};
  const auto r = run_scenario(c);
  ASSERT_EQ(r.outcomes.size(), 1u);
  EXPECT_FALSE(r.dominance);
  EXPECT_FALSE(r.gap);
}

TEST(Scenario, EveryStrategyOnceInConfigOrder) {
  auto c = quick_config();
  c.strategies = {PolicyKind::kRobust, PolicyKind::kConstant, PolicyKind::kNaive,
                  PolicyKind::kOptimal};
  const auto r = run_scenario(c);
  ASSERT_EQ(r.outcomes.size(), 4u);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(r.outcomes[k].kind, c.strategies[k]);
  for (const auto& o : r.outcomes) {
    EXPECT_EQ(o.record.start(), 0.0);
    EXPECT_EQ(o.record.states.front().i, c.initial.i);
  }
}

TEST(Scenario, SameSeedGivesIdenticalSummaries) {
  const auto c = quick_config();
  EXPECT_EQ(summary_json(run_scenario(c)), summary_json(run_scenario(c)));
  auto other = c;
  other.noise->seed += 1;
  EXPECT_NE(summary_json(run_scenario(c)), summary_json(run_scenario(other)));
}

TEST(Scenario, ControlsStayWithinBounds) {
  const auto r = run_scenario(quick_config());
  for (const auto& o : r.outcomes)
    for (double u : o.record.controls) {
      ASSERT_GE(u, 0.03);
      ASSERT_LE(u, 0.15);
    }
}

TEST(Scenario, PreflightVerdicts) {
  const auto p = preflight(load_config(kConfigs / "noisy_daily.json"));
  EXPECT_FALSE(p.strategy1_optimal);
  ASSERT_TRUE(p.required_at_outbreak);
  EXPECT_NEAR(*p.required_at_outbreak, 0.12434742322259515, 1e-12);
  EXPECT_TRUE(p.feasible);
  auto c = load_config(kConfigs / "noisy_daily.json");
  c.constraints.u_max = 0.1;
  EXPECT_FALSE(preflight(c).feasible);
  EXPECT_TRUE(preflight(load_config(kConfigs / "low_transmission.json")).strategy1_optimal);
}

TEST(Export, TrajectoryRoundTrip) {
  const auto r = run_scenario(quick_config());
  const fs::path dir = kTmp / "roundtrip";
  export_report(r, dir);
  export_report(r, dir);  // overwrite in place
  for (const auto& o : r.outcomes) {
    const std::string name(policy_kind_name(o.kind));
    const auto path = dir / (name + ".csv");
    const std::string text = slurp(path);
    EXPECT_EQ(text.substr(0, text.find('\n')), "t,S,I,R,u,phase");
    const auto back = read_trajectory_csv(path);
    const auto rows = trajectory_rows(o.record);
    ASSERT_EQ(back.size(), rows.size());
    ASSERT_EQ(rows.size(), o.record.query_indices().size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
      EXPECT_EQ(back[k].t, rows[k].t);
      EXPECT_EQ(back[k].state.s, rows[k].state.s);
      EXPECT_EQ(back[k].state.i, rows[k].state.i);
      EXPECT_EQ(back[k].state.r, rows[k].state.r);
      EXPECT_EQ(back[k].u, rows[k].u);
      EXPECT_EQ(back[k].phase, rows[k].phase);
    }
  }
  EXPECT_TRUE(fs::exists(dir / "robust_estimates.csv"));
}

TEST(Export, SummaryCarriesGapSideBySide) {
  auto c = load_config(kConfigs / "covering_envelope.json");
  c.ode_step = 0.01;
  c.policy_interval = 0.01;
  const auto r = run_scenario(c);
  const auto doc = json::parse(summary_json(r));
  ASSERT_TRUE(doc["gap"].is_object());
  EXPECT_TRUE(doc["gap"].contains("gap_formula"));
  EXPECT_TRUE(doc["gap"].contains("cost_difference"));
  ASSERT_EQ(doc["strategies"].size(), 2u);
  for (const auto& s : doc["strategies"]) {
    for (const char* key : {"total_cost", "per_phase_cost", "t_b", "t_h", "max_I", "feasible"})
      EXPECT_TRUE(s.contains(key)) << key;
  }
}

TEST(Export, UnwritableDirectoryReportsPath) {
  const fs::path blocker = kTmp / "blocker";
  fs::create_directories(kTmp);
  std::ofstream(blocker) << "x";
  try {
    export_report(run_scenario(quick_config()), blocker / "out");
    ADD_FAILURE() << "export into a file path succeeded";
  } catch (const IoError& e) {
    EXPECT_NE(e.path().find("blocker"), std::string::npos);
  }
}

TEST(Export, ReadRejectsMalformedCsv) {
  fs::create_directories(kTmp);
  const auto p = kTmp / "bad.csv";
  std::ofstream(p) << "t,S,I,R,u,phase\n0,1,0,0,0.03,sideways\n";
  EXPECT_THROW(read_trajectory_csv(p), IoError);
  std::ofstream(p) << "time,S\n";
  EXPECT_THROW(read_trajectory_csv(p), IoError);
  EXPECT_THROW(read_trajectory_csv(kTmp / "missing.csv"), IoError);
}

// The four ordering claims against the optimal policy, with beta and gamma
// known to within 5% and no observation noise.
void expect_ordering(ScenarioConfig c) {
  c.ode_step = 0.01;
  c.policy_interval = 0.01;
  c.strategies = {PolicyKind::kOptimal, PolicyKind::kRobust};
  const auto r = run_scenario(c);
  ASSERT_TRUE(r.dominance);
  const auto& d = *r.dominance;
  EXPECT_TRUE(d.control_dominates) << d.min_control_margin;
  EXPECT_TRUE(d.earlier_entry);
  EXPECT_TRUE(d.later_exit);
  EXPECT_TRUE(d.cost_ordering);
  EXPECT_TRUE(d.cumulative_ordering);
  EXPECT_TRUE(d.susceptible_dominates);
}

TEST(Ordering, HoldsOnCoveringEnvelope) { expect_ordering(load_config(kConfigs / "covering_envelope.json")); }

TEST(Ordering, HoldsAtLowTransmission) {
  expect_ordering(load_config(kConfigs / "low_transmission.json"));
}

TEST(Dominance, DetectsViolations) {
  auto c = load_config(kConfigs / "covering_envelope.json");
  c.ode_step = 0.01;
  c.policy_interval = 0.01;
  c.strategies = {PolicyKind::kOptimal, PolicyKind::kNaive};
  const auto r = run_scenario(c);
  // With exact estimates and no noise the naive policy is the optimal one.
  const auto& naive = r.outcomes[1].record;
  const auto& best = r.outcomes[0].record;
  const auto d = check_dominance(naive, best);
  EXPECT_NEAR(d.min_control_margin, 0.0, 1e-12);
  // Swapping roles of a genuinely larger control flips the orderings.
  c.strategies = {PolicyKind::kOptimal, PolicyKind::kRobust};
  const auto r2 = run_scenario(c);
  const auto flipped = check_dominance(r2.outcomes[0].record, r2.outcomes[1].record);
  EXPECT_FALSE(flipped.control_dominates);
  EXPECT_FALSE(flipped.cost_ordering);
}

}  // namespace
}  // namespace sirtest
