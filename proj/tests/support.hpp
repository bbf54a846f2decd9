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

// Shared fixtures: the three-user scenario store and its behavior table.

#ifndef TDACS_TESTS_SUPPORT_HPP
#define TDACS_TESTS_SUPPORT_HPP

#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "common/clock.hpp"
#include "model/model.hpp"

namespace tdacs::testing {

// Weekly (successes, failures) per user over two months of four weeks.
struct WeeklyCounts {
  const char* uname;
  double t_init;
  std::array<std::pair<long, long>, 8> weeks;
};

inline const std::vector<WeeklyCounts>& behavior_table() {
  static const std::vector<WeeklyCounts> table = {
      {"A",
       0.5,
       {{{50, 5}, {70, 10}, {90, 8}, {140, 12},
         {180, 10}, {210, 12}, {260, 9}, {290, 15}}}},
      {"B",
       0.5,
       {{{200, 35}, {280, 40}, {290, 50}, {320, 55},
         {280, 60}, {200, 70}, {100, 80}, {50, 90}}}},
      {"C",
       0.4,
       {{{60, 3}, {100, 6}, {180, 8}, {220, 9},
         {99, 18}, {72, 20}, {65, 30}, {40, 35}}}},
  };
  return table;
}

inline model::AttributeStore make_store() {
  model::AttributeStore store;
  store.users = {{"A", "analyst", "au_1", 0.5},
                 {"B", "analyst", "au_2", 0.5},
                 {"C", "guest", "au_3", 0.4}};
  store.passwords = {{"A", "pwA"}, {"B", "pwB"}, {"C", "pwC"}};
  store.resources = {{"R1", "HDFS"}, {"R2", "YARN"}, {"R3", "Hive"},
                     {"R4", "HDFS"}};
  store.services = {"HDFS", "YARN", "Hive"};
  store.env.ip_wl = {"10.0.0.5", "10.0.0.6"};
  for (const auto& service : store.services) {
    store.env.speriod[service] = {{9 * 60, 17 * 60}};
    store.env.threshold[service] = 100;
  }
  store.policies.rules = {
      {"p1", "A", "R1", model::Op::write, model::RuleStatus::allow},
      {"p2", "A", "R3", model::Op::read, model::RuleStatus::allow},
      {"p3", "analyst", "R2", model::Op::select, model::RuleStatus::allow},
      {"p4", "C", "R1", model::Op::drop, model::RuleStatus::deny},
      {"p5", "guest", "R1", model::Op::read, model::RuleStatus::allow},
  };
  store.reslist = {{"R1", 0.1}, {"R2", 0.3}, {"R3", 0.5}, {"R4", 0.7}};
  return store;
}

inline nlohmann::json make_config_doc() {
  nlohmann::json doc = model::store_to_json(make_store());
  doc["token_key"] =
      "6b6579206d6174657269616c20666f722074657374696e67206f6e6c792e2e2e";
  doc["trust"] = {{"alpha", 0.5}, {"beta", 10.0}, {"window_n", 4},
                  {"granularity", "week"}};
  return doc;
}

// Eight Monday-aligned weeks starting 2019-12-30 (the week containing
// 2020-01-01).
inline int64_t scenario_start() {
  return clock::civil_to_epoch(2019, 12, 30);
}

inline nlohmann::json make_scenario_doc() {
  nlohmann::json users = nlohmann::json::object();
  for (const auto& row : behavior_table()) {
    nlohmann::json weeks = nlohmann::json::array();
    for (const auto& [suc, fail] : row.weeks) {
      weeks.push_back({suc, fail});
    }
    users[row.uname] = {{"weeks", std::move(weeks)}};
  }
  return nlohmann::json{{"start", "2019-12-30 00:00:00"},
                        {"seed", 42},
                        {"granularity", "week"},
                        {"users", std::move(users)}};
}

inline nlohmann::json make_full_config_doc() {
  nlohmann::json doc = make_config_doc();
  doc["scenario"] = make_scenario_doc();
  return doc;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("tdacs_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter_++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  std::filesystem::path path_;
};

}  // namespace tdacs::testing

#endif  // TDACS_TESTS_SUPPORT_HPP
