// Copyright 2026 the tdacs authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Scenario engine: synthesizes per-user weekly behavior segments from
// declared success/failure counts, replays traces through the full
// pipeline, and renders trust-trajectory / permission reports.

#ifndef TDACS_HARNESS_HARNESS_HPP
#define TDACS_HARNESS_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gateway/gateway.hpp"

namespace tdacs::harness {

struct WeekCounts {
  long suc = 0;
  long fail = 0;
};

struct ScenarioUser {
  std::string uname;
  std::optional<double> t_init;  // overrides the store's value when set
  std::vector<WeekCounts> weeks;
};

struct ScenarioConfig {
  int64_t start = 0;  // first period begins here
  uint64_t seed = 1;
  clock::Granularity granularity = clock::Granularity::week;
  std::vector<ScenarioUser> users;
};

ScenarioConfig scenario_from_json(const nlohmann::json& doc,
                                  clock::Granularity default_granularity);

struct ScenarioSummary {
  int users = 0;
  int segments = 0;
  long records = 0;
};

// Fills and anchors one segment per (user, week) whose flag counts equal
// the declared (suc, fail).  Raises invalid_config on negative counts.
ScenarioSummary generate_scenario(const ScenarioConfig& cfg,
                                  gateway::GatewayService& gw);

struct TraceEvent {
  int64_t at = 0;
  std::string uname;
  std::string rname;
  model::Op op = model::Op::read;
  std::string ip;
  std::optional<decision::Verdict> expected;
};

std::vector<TraceEvent> load_trace_file(const std::string& path);

struct ReplayRow {
  TraceEvent event;
  std::string verdict;
  std::string reason;
  bool mismatch = false;
};

struct ReplayReport {
  std::vector<ReplayRow> rows;
  int mismatches = 0;

  nlohmann::json to_json() const;
  std::string to_text() const;
};

ReplayReport replay_trace(const std::vector<TraceEvent>& trace,
                          gateway::GatewayService& gw);

struct MonthEntry {
  int month = 0;
  double ts = 0.0;
  std::vector<std::string> permitted;
};

struct UserTrajectory {
  std::string uname;
  double t_init = 0.0;
  std::vector<MonthEntry> months;
};

struct TrustReport {
  std::vector<UserTrajectory> users;
  std::string text;
  nlohmann::json to_json() const;
};

// Month-by-month comprehensive trust (cascaded) and permitted-resource
// sets for every configured user.  months <= 0 derives the count from the
// anchored history.
TrustReport trust_report(gateway::GatewayService& gw, int months = 0);

// Per-segment breakdown for one user: weekly (x, y, ts_i) series, window
// weights and the cascaded inputs of each evaluation period.
struct UserTrustDetail {
  std::string uname;
  std::string text;
  nlohmann::json to_json() const;
  nlohmann::json body;
};

UserTrustDetail user_trust_detail(gateway::GatewayService& gw,
                                  const std::string& uname);

}  // namespace tdacs::harness

#endif  // TDACS_HARNESS_HARNESS_HPP
