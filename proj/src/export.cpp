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

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>
#include "sirtest/errors.hpp"
#include "sirtest/scenario.hpp"

namespace sirtest {

using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json opt(const std::optional<double>& v) {
  return v && std::isfinite(*v) ? json(*v) : json(nullptr);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  out << text;
  out.flush();
  if (!out) throw IoError(path.string(), "write failed");
}

std::string estimates_csv(const std::vector<ObservationLogEntry>& log) {
  std::ostringstream out;
  out << "t,S_obs,I_obs,R_obs,beta_hat,beta_lo,beta_hi,gamma_hat,gamma_lo,gamma_hi,"
         "S_max,I_max,u\n";
  for (const auto& e : log) {
    out << num(e.time) << ',' << num(e.observation.s_obs) << ',' << num(e.observation.i_obs)
        << ',' << num(e.observation.r_obs) << ',';
    if (e.estimate) {
      out << num(e.estimate->beta_hat) << ',' << num(e.estimate->beta_interval.lo) << ','
          << num(e.estimate->beta_interval.hi) << ',' << num(e.estimate->gamma_hat) << ','
          << num(e.estimate->gamma_interval.lo) << ',' << num(e.estimate->gamma_interval.hi)
          << ',';
    } else {
      out << ",,,,,,";
    }
    out << num(e.envelope.s.hi) << ',' << num(e.envelope.i.hi) << ',' << num(e.control)
        << '\n';
  }
  return out.str();
}

double parse_double(std::string_view field, const std::string& path, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw IoError(path, "line " + std::to_string(line) + ": bad number '" +
                            std::string(field) + "'");
  return v;
}

}  // namespace

std::vector<TrajectoryRow> trajectory_rows(const SimulationRecord& record) {
  std::vector<TrajectoryRow> rows;
  for (auto k : record.query_indices())
    rows.push_back({record.times[k], record.states[k], record.controls[k], record.phases[k]});
  return rows;
}

std::string trajectory_csv(const SimulationRecord& record) {
  std::ostringstream out;
  out << "t,S,I,R,u,phase\n";
  for (const auto& row : trajectory_rows(record)) {
    out << num(row.t) << ',' << num(row.state.s) << ',' << num(row.state.i) << ','
        << num(row.state.r) << ',' << num(row.u) << ',' << phase_name(row.phase) << '\n';
  }
  return out.str();
}

std::vector<TrajectoryRow> read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string(), "cannot open for reading");
  std::string line;
  if (!std::getline(in, line) || line != "t,S,I,R,u,phase")
    throw IoError(path.string(), "missing header t,S,I,R,u,phase");
  std::vector<TrajectoryRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos;) {
      fields.push_back(rest.substr(0, pos));
      rest.remove_prefix(pos + 1);
    }
    fields.push_back(rest);
    if (fields.size() != 6)
      throw IoError(path.string(), "line " + std::to_string(lineno) + ": expected 6 fields");
    TrajectoryRow row;
    row.t = parse_double(fields[0], path.string(), lineno);
    row.state = {parse_double(fields[1], path.string(), lineno),
                 parse_double(fields[2], path.string(), lineno),
                 parse_double(fields[3], path.string(), lineno)};
    row.u = parse_double(fields[4], path.string(), lineno);
    const auto phase = parse_phase(fields[5]);
    if (!phase) throw IoError(path.string(), "line " + std::to_string(lineno) + ": bad phase");
    row.phase = *phase;
    rows.push_back(row);
  }
  return rows;
}

std::string summary_json(const ComparisonReport& report) {
  json doc;
  doc["config"] = json::parse(dump_config(report.config));
  doc["noise_scales"] = {{"S", report.noise.s}, {"I", report.noise.i}, {"R", report.noise.r}};
  json strategies = json::array();
  for (const auto& o : report.outcomes) {
    const auto& r = o.record;
    json s;
    s["strategy"] = std::string(policy_kind_name(o.kind));
    s["total_cost"] = o.cost.total_cost;
    s["per_phase_cost"] = {{"pre_outbreak", o.cost.per_phase[0]},
                           {"suppression", o.cost.per_phase[1]},
                           {"post_herd_immunity", o.cost.per_phase[2]}};
    s["gap_vs_optimal"] = opt(o.cost.gap_vs_optimal);
    s["t_b"] = opt(r.t_b);
    s["t_h"] = opt(r.t_h);
    s["threshold_crossing"] = opt(r.threshold_crossing);
    s["infeasible_at"] = opt(r.infeasible_at);
    s["max_I"] = o.max_infected;
    s["feasible"] = o.feasible;
    s["nearly_feasible"] = o.nearly_feasible;
    s["end_time"] = r.end();
    strategies.push_back(s);
  }
  doc["strategies"] = strategies;
  if (report.dominance) {
    const auto& d = *report.dominance;
    doc["dominance"] = {{"control_dominates", d.control_dominates},
                        {"min_control_margin", opt(d.min_control_margin)},
                        {"earlier_entry", d.earlier_entry},
                        {"later_exit", d.later_exit},
                        {"cost_ordering", d.cost_ordering},
                        {"cumulative_ordering", d.cumulative_ordering},
                        {"susceptible_dominates", d.susceptible_dominates}};
  } else {
    doc["dominance"] = nullptr;
  }
  if (report.gap) {
    doc["gap"] = {{"from", report.gap->window.from},
                  {"to", report.gap->window.to},
                  {"gap_formula", report.gap->formula},
                  {"cost_difference", report.gap->cost_difference}};
  } else {
    doc["gap"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

void export_report(const ComparisonReport& report, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError(out_dir.string(), ec.message());
  for (const auto& o : report.outcomes) {
    const std::string name(policy_kind_name(o.kind));
    write_file(out_dir / (name + ".csv"), trajectory_csv(o.record));
    if (!o.observations.empty())
      write_file(out_dir / (name + "_estimates.csv"), estimates_csv(o.observations));
  }
  write_file(out_dir / "summary.json", summary_json(report));
}

}  // namespace sirtest
