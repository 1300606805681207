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

/* C interface to the sirtest toolkit.
 *
 * Objects are opaque handles created by the load, parse and run calls and released by
 * the matching free call. Every fallible call returns a sirtest_status; on
 * failure sirtest_last_error() describes the problem (thread-local, valid
 * until the next call on the same thread). Absent times are reported as NaN.
 */
#ifndef SIRTEST_SIRTEST_H
#define SIRTEST_SIRTEST_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SIRTEST_BUILDING)
#    define SIRTEST_API __declspec(dllexport)
#  else
#    define SIRTEST_API __declspec(dllimport)
#  endif
#else
#  define SIRTEST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sirtest_status {
  SIRTEST_OK = 0,
  SIRTEST_ERR_CONFIG = 1,
  SIRTEST_ERR_RUNTIME = 2,
  SIRTEST_ERR_IO = 3,
  SIRTEST_ERR_DOMAIN = 4,
  SIRTEST_ERR_INVALID_ARGUMENT = 5
} sirtest_status;

typedef struct sirtest_scenario sirtest_scenario;
typedef struct sirtest_report sirtest_report;

typedef struct sirtest_peak {
  double rho;
  double i_peak;
  double s_at_peak;
  int future_peak;
} sirtest_peak;

typedef struct sirtest_preflight {
  double rho;
  double peak;
  int strategy1_optimal;
  int has_outbreak;
  double s_at_outbreak;     /* NaN without an outbreak */
  double required_control;  /* NaN without an outbreak */
  int feasible;
} sirtest_preflight;

typedef struct sirtest_strategy_summary {
  char name[16];
  double total_cost;
  double phase_cost[3];
  double gap_vs_optimal;
  double t_b;
  double t_h;
  double threshold_crossing;
  double infeasible_at;
  double max_infected;
  double end_time;
  int feasible;
  int nearly_feasible;
} sirtest_strategy_summary;

typedef struct sirtest_dominance {
  int control_dominates;
  double min_control_margin;
  int earlier_entry;
  int later_exit;
  int cost_ordering;
  int cumulative_ordering;
  int susceptible_dominates;
} sirtest_dominance;

typedef struct sirtest_gap {
  double from;
  double to;
  double formula;
  double cost_difference;
} sirtest_gap;

SIRTEST_API const char* sirtest_version(void);
SIRTEST_API const char* sirtest_last_error(void);
SIRTEST_API const char* sirtest_status_name(sirtest_status status);

SIRTEST_API sirtest_status sirtest_scenario_load(const char* path, sirtest_scenario** out);
SIRTEST_API sirtest_status sirtest_scenario_parse(const char* json_text, sirtest_scenario** out);
SIRTEST_API sirtest_status sirtest_scenario_clone(const sirtest_scenario* scenario,
                                                  sirtest_scenario** out);
SIRTEST_API void sirtest_scenario_free(sirtest_scenario* scenario);

SIRTEST_API sirtest_status sirtest_scenario_set_seed(sirtest_scenario* scenario, uint64_t seed);
SIRTEST_API sirtest_status sirtest_scenario_disable_noise(sirtest_scenario* scenario);
/* Names: beta, gamma, u_min, u_max, i_bar, i0, horizon, ode_step,
 * policy_interval, inflation, window. i0 keeps R(0) and rebalances S(0). */
SIRTEST_API sirtest_status sirtest_scenario_set_param(sirtest_scenario* scenario,
                                                      const char* name, double value);
SIRTEST_API sirtest_status sirtest_scenario_get_param(const sirtest_scenario* scenario,
                                                      const char* name, double* out);
SIRTEST_API sirtest_status sirtest_scenario_preflight(const sirtest_scenario* scenario,
                                                      sirtest_preflight* out);
/* Peak I of the constant-u_min run, simulated with the scenario's step. */
SIRTEST_API sirtest_status sirtest_scenario_simulated_peak(const sirtest_scenario* scenario,
                                                           double* out);

SIRTEST_API sirtest_status sirtest_run(const sirtest_scenario* scenario, sirtest_report** out);
SIRTEST_API void sirtest_report_free(sirtest_report* report);
SIRTEST_API size_t sirtest_report_strategy_count(const sirtest_report* report);
SIRTEST_API sirtest_status sirtest_report_strategy(const sirtest_report* report, size_t index,
                                                   sirtest_strategy_summary* out);
/* SIRTEST_ERR_DOMAIN when the report lacks the optimal/robust pair. */
SIRTEST_API sirtest_status sirtest_report_dominance(const sirtest_report* report,
                                                    sirtest_dominance* out);
SIRTEST_API sirtest_status sirtest_report_gap(const sirtest_report* report, sirtest_gap* out);
/* Copies the NUL-terminated summary JSON into buffer. *required is always set
 * to the size needed including the terminator; pass buffer = NULL to query it. */
SIRTEST_API sirtest_status sirtest_report_summary_json(const sirtest_report* report,
                                                       char* buffer, size_t capacity,
                                                       size_t* required);
SIRTEST_API sirtest_status sirtest_report_export(const sirtest_report* report,
                                                 const char* out_dir);

SIRTEST_API sirtest_status sirtest_peak_infection(double beta, double gamma, double u_floor,
                                                  double s_a, double i_a, sirtest_peak* out);

#ifdef __cplusplus
}
#endif

#endif /* SIRTEST_SIRTEST_H */
