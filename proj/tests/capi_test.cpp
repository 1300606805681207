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


// Uses nothing but the C header and the shared library.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "sirtest/sirtest.h"

namespace {

const std::string kConfigs = SIRTEST_CONFIG_DIR;
const std::string kTmp = SIRTEST_TEST_TMP;

const char* kSmall = R"({
  "params": {"beta": 0.16, "gamma": 0.033},
  "constraints": {"u_min": 0.03, "u_max": 0.15, "i_bar": 0.01},
  "initial": {"S": 0.99999, "I": 0.00001, "R": 0},
  "time": {"horizon": 300, "ode_step": 0.01, "policy_interval": 1},
  "noise": {"snr_db": 55, "seed": 4},
  "estimation": {"method": "regression", "window": 14, "inflation": 0.1},
  "strategies": ["optimal", "naive", "robust"]
})";

struct Scenario {
  sirtest_scenario* p = nullptr;
  ~Scenario() { sirtest_scenario_free(p); }
};
struct Report {
  sirtest_report* p = nullptr;
  ~Report() { sirtest_report_free(p); }
};

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(sirtest_version(), "1.0.0");
  EXPECT_STREQ(sirtest_status_name(SIRTEST_OK), "ok");
  EXPECT_STRNE(sirtest_status_name(SIRTEST_ERR_CONFIG), sirtest_status_name(SIRTEST_ERR_IO));
}

TEST(CApi, NullArgumentsAreRejected) {
  sirtest_scenario* s = nullptr;
  EXPECT_EQ(sirtest_scenario_load(nullptr, &s), SIRTEST_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(sirtest_scenario_parse(kSmall, nullptr), SIRTEST_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(sirtest_run(nullptr, nullptr), SIRTEST_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(sirtest_peak_infection(0.16, 0.033, 0.03, 0.99999, 1e-5, nullptr),
            SIRTEST_ERR_INVALID_ARGUMENT);
  EXPECT_GT(std::strlen(sirtest_last_error()), 0u);
  sirtest_scenario_free(nullptr);
  sirtest_report_free(nullptr);
}

TEST(CApi, ConfigErrorsCarryMessages) {
  Scenario s;
  EXPECT_EQ(sirtest_scenario_parse("{\"params\": 3}", &s.p), SIRTEST_ERR_CONFIG);
  EXPECT_EQ(s.p, nullptr);
  EXPECT_NE(std::string(sirtest_last_error()).find("params"), std::string::npos);
  EXPECT_EQ(sirtest_scenario_load("/nonexistent/x.json", &s.p), SIRTEST_ERR_CONFIG);
}

TEST(CApi, PeakInfection) {
  sirtest_peak p;
  ASSERT_EQ(sirtest_peak_infection(0.16, 0.033, 0.03, 0.99999, 1e-5, &p), SIRTEST_OK);
  EXPECT_DOUBLE_EQ(p.rho, 0.39375);
  EXPECT_NEAR(p.i_peak, 0.2392635462880343, 1e-14);
  EXPECT_TRUE(p.future_peak);
  EXPECT_EQ(sirtest_peak_infection(0.16, 0.033, 0.03, 0.0, 1e-5, &p), SIRTEST_ERR_DOMAIN);
}

TEST(CApi, PreflightAndSimulatedPeak) {
  Scenario s;
  ASSERT_EQ(sirtest_scenario_load((kConfigs + "/noisy_daily.json").c_str(), &s.p), SIRTEST_OK);
  sirtest_preflight pf;
  ASSERT_EQ(sirtest_scenario_preflight(s.p, &pf), SIRTEST_OK);
  EXPECT_FALSE(pf.strategy1_optimal);
  EXPECT_TRUE(pf.has_outbreak);
  EXPECT_NEAR(pf.required_control, 0.12434742322259515, 1e-12);
  EXPECT_TRUE(pf.feasible);
  double peak = 0;
  ASSERT_EQ(sirtest_scenario_set_param(s.p, "ode_step", 1e-3), SIRTEST_OK);
  ASSERT_EQ(sirtest_scenario_simulated_peak(s.p, &peak), SIRTEST_OK);
  EXPECT_NEAR(peak, pf.peak, 1e-4);
}

TEST(CApi, SetParamValidatesBeforeCommitting) {
  Scenario s;
  ASSERT_EQ(sirtest_scenario_parse(kSmall, &s.p), SIRTEST_OK);
  EXPECT_EQ(sirtest_scenario_set_param(s.p, "delta", 1.0), SIRTEST_ERR_CONFIG);
  EXPECT_EQ(sirtest_scenario_set_param(s.p, "u_min", 0.5), SIRTEST_ERR_CONFIG);
  double v = 0;
  ASSERT_EQ(sirtest_scenario_get_param(s.p, "u_min", &v), SIRTEST_OK);
  EXPECT_EQ(v, 0.03);
  ASSERT_EQ(sirtest_scenario_set_param(s.p, "i0", 1e-3), SIRTEST_OK);
  sirtest_preflight pf;
  ASSERT_EQ(sirtest_scenario_preflight(s.p, &pf), SIRTEST_OK);
  sirtest_peak p;
  sirtest_peak_infection(0.16, 0.033, 0.03, 1.0 - 1e-3, 1e-3, &p);
  EXPECT_DOUBLE_EQ(pf.peak, p.i_peak);
}

TEST(CApi, RunReportsEveryStrategy) {
  Scenario s;
  ASSERT_EQ(sirtest_scenario_parse(kSmall, &s.p), SIRTEST_OK);
  Report r;
  ASSERT_EQ(sirtest_run(s.p, &r.p), SIRTEST_OK);
  ASSERT_EQ(sirtest_report_strategy_count(r.p), 3u);
  const char* names[] = {"optimal", "naive", "robust"};
  for (size_t k = 0; k < 3; ++k) {
    sirtest_strategy_summary sum;
    ASSERT_EQ(sirtest_report_strategy(r.p, k, &sum), SIRTEST_OK);
    EXPECT_STREQ(sum.name, names[k]);
    EXPECT_GT(sum.total_cost, 0.0);
    EXPECT_NEAR(sum.phase_cost[0] + sum.phase_cost[1] + sum.phase_cost[2], sum.total_cost, 1e-9);
  }
  sirtest_strategy_summary best;
  sirtest_report_strategy(r.p, 0, &best);
  EXPECT_TRUE(std::isnan(best.gap_vs_optimal));
  sirtest_strategy_summary out_of_range;
  EXPECT_EQ(sirtest_report_strategy(r.p, 3, &out_of_range), SIRTEST_ERR_INVALID_ARGUMENT);
  sirtest_dominance d;
  EXPECT_EQ(sirtest_report_dominance(r.p, &d), SIRTEST_OK);
}

TEST(CApi, DominanceNeedsTheRobustPair) {
  Scenario s;
  ASSERT_EQ(sirtest_scenario_parse(kSmall, &s.p), SIRTEST_OK);
  Scenario single;
  std::string text = kSmall;
  text.replace(text.find("\"optimal\", \"naive\", \"robust\""), 28, "\"optimal\"");
  ASSERT_EQ(sirtest_scenario_parse(text.c_str(), &single.p), SIRTEST_OK) << sirtest_last_error();
  Report r;
  ASSERT_EQ(sirtest_run(single.p, &r.p), SIRTEST_OK);
  sirtest_dominance d;
  sirtest_gap g;
  EXPECT_EQ(sirtest_report_dominance(r.p, &d), SIRTEST_ERR_DOMAIN);
  EXPECT_EQ(sirtest_report_gap(r.p, &g), SIRTEST_ERR_DOMAIN);
}

TEST(CApi, SummaryJsonSizeQuery) {
  Scenario s;
  ASSERT_EQ(sirtest_scenario_parse(kSmall, &s.p), SIRTEST_OK);
  Report r;
  ASSERT_EQ(sirtest_run(s.p, &r.p), SIRTEST_OK);
  size_t need = 0;
  ASSERT_EQ(sirtest_report_summary_json(r.p, nullptr, 0, &need), SIRTEST_OK);
  ASSERT_GT(need, 1u);
  std::vector<char> small(need - 1);
  EXPECT_EQ(sirtest_report_summary_json(r.p, small.data(), small.size(), &need),
            SIRTEST_ERR_INVALID_ARGUMENT);
  std::vector<char> buf(need);
  ASSERT_EQ(sirtest_report_summary_json(r.p, buf.data(), buf.size(), nullptr), SIRTEST_OK);
  EXPECT_EQ(std::strlen(buf.data()) + 1, need);
  EXPECT_NE(std::string(buf.data()).find("\"strategies\""), std::string::npos);
}

TEST(CApi, SeedAndNoiseControls) {
  auto summary = [](sirtest_scenario* s) {
    Report r;
    EXPECT_EQ(sirtest_run(s, &r.p), SIRTEST_OK);
    size_t need = 0;
    sirtest_report_summary_json(r.p, nullptr, 0, &need);
    std::string out(need, '\0');
    sirtest_report_summary_json(r.p, out.data(), need, nullptr);
    return out;
  };
  Scenario a, b;
  ASSERT_EQ(sirtest_scenario_parse(kSmall, &a.p), SIRTEST_OK);
  ASSERT_EQ(sirtest_scenario_clone(a.p, &b.p), SIRTEST_OK);
  EXPECT_EQ(summary(a.p), summary(b.p));
  ASSERT_EQ(sirtest_scenario_set_seed(b.p, 5), SIRTEST_OK);
  EXPECT_NE(summary(a.p), summary(b.p));
  ASSERT_EQ(sirtest_scenario_disable_noise(b.p), SIRTEST_OK);
  EXPECT_NE(summary(b.p).find("\"noise\": null"), std::string::npos);
}

TEST(CApi, ExportWritesFilesAndReportsIoErrors) {
  Scenario s;
  ASSERT_EQ(sirtest_scenario_parse(kSmall, &s.p), SIRTEST_OK);
  Report r;
  ASSERT_EQ(sirtest_run(s.p, &r.p), SIRTEST_OK);
  const std::string dir = kTmp + "/capi_export";
  ASSERT_EQ(sirtest_report_export(r.p, dir.c_str()), SIRTEST_OK);
  for (const char* f : {"optimal.csv", "naive.csv", "robust.csv", "summary.json"})
    EXPECT_TRUE(std::filesystem::exists(dir + "/" + f)) << f;
  const std::string blocked = dir + "/summary.json/sub";
  EXPECT_EQ(sirtest_report_export(r.p, blocked.c_str()), SIRTEST_ERR_IO);
  EXPECT_NE(std::string(sirtest_last_error()).find("summary.json"), std::string::npos);
}

TEST(CApi, LastErrorIsPerThread) {
  Scenario s;
  EXPECT_EQ(sirtest_scenario_parse("{", &s.p), SIRTEST_ERR_CONFIG);
  const std::string here = sirtest_last_error();
  std::string there;
  std::thread([&] {
    sirtest_peak p;
    sirtest_peak_infection(0.16, 0.033, 0.03, -1.0, 0.0, &p);
    there = sirtest_last_error();
  }).join();
  EXPECT_EQ(sirtest_last_error(), here);
  EXPECT_NE(there, here);
}

}  // namespace
