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

#include "model/model.hpp"

#include <algorithm>
#include <fstream>

#include <nlohmann/json.hpp>

#include "common/clock.hpp"
#include "common/error.hpp"

namespace tdacs::model {

using nlohmann::json;

std::optional<Op> parse_op(std::string_view label) {
  if (label == "read") return Op::read;
  if (label == "write") return Op::write;
  if (label == "execute") return Op::execute;
  if (label == "select") return Op::select;
  if (label == "insert") return Op::insert;
  if (label == "delete") return Op::del;
  if (label == "drop") return Op::drop;
  if (label == "copy") return Op::copy;
  if (label == "submit") return Op::submit;
  return std::nullopt;
}

const char* op_label(Op op) {
  switch (op) {
    case Op::read:
      return "read";
    case Op::write:
      return "write";
    case Op::execute:
      return "execute";
    case Op::select:
      return "select";
    case Op::insert:
      return "insert";
    case Op::del:
      return "delete";
    case Op::drop:
      return "drop";
    case Op::copy:
      return "copy";
    case Op::submit:
      return "submit";
  }
  return "read";
}

const UserAttr* AttributeStore::find_user(std::string_view uname) const {
  for (const auto& u : users) {
    if (u.uname == uname) {
      return &u;
    }
  }
  return nullptr;
}

const ResourceAttr& find_resource(const AttributeStore& store,
                                  std::string_view rname) {
  for (const auto& r : store.resources) {
    if (r.rname == rname) {
      return r;
    }
  }
  raise(ErrorCode::unknown_resource,
        "unknown resource: " + std::string(rname));
}

bool ip_syntax_valid(std::string_view ip) {
  // Dotted-quad IPv4.
  int octets = 0;
  size_t i = 0;
  while (i < ip.size()) {
    if (octets == 4) return false;
    size_t start = i;
    int value = 0;
    while (i < ip.size() && ip[i] >= '0' && ip[i] <= '9') {
      value = value * 10 + (ip[i] - '0');
      if (value > 255) return false;
      ++i;
    }
    size_t len = i - start;
    if (len == 0 || len > 3) return false;
    if (len > 1 && ip[start] == '0') return false;
    ++octets;
    if (i < ip.size()) {
      if (ip[i] != '.') return false;
      ++i;
      if (i == ip.size()) return false;
    }
  }
  return octets == 4;
}

std::vector<std::string> validate_store(const AttributeStore& store) {
  std::vector<std::string> out;
  auto flag = [&out](const std::string& msg) { out.push_back(msg); };

  std::set<std::string> unames;
  for (const auto& u : store.users) {
    if (u.uname.empty()) {
      flag("empty uname");
    } else if (!unames.insert(u.uname).second) {
      flag("duplicate uname: " + u.uname);
    }
    if (u.t_init < 0.0 || u.t_init > 1.0) {
      flag("t_init out of [0,1] for user " + u.uname);
    }
    if (u.agent.empty()) {
      flag("no agent assigned to user " + u.uname);
    }
  }

  std::set<std::string> rnames;
  std::set<std::string> services(store.services.begin(), store.services.end());
  for (const auto& r : store.resources) {
    if (!rnames.insert(r.rname).second) {
      flag("duplicate rname: " + r.rname);
    }
    if (!services.count(r.oname)) {
      flag("resource " + r.rname + " names unknown service " + r.oname);
    }
  }

  for (const auto& ip : store.env.ip_wl) {
    if (!ip_syntax_valid(ip)) {
      flag("invalid ip in ip_wl: " + ip);
    }
  }
  for (const auto& [service, windows] : store.env.speriod) {
    for (const auto& w : windows) {
      if (w.start_min >= w.end_min) {
        flag("speriod window for " + service + " has start >= end");
      }
    }
  }
  for (const auto& [service, quota] : store.env.threshold) {
    if (quota < 0) {
      flag("negative threshold for " + service);
    }
  }

  std::set<std::string> rule_ids;
  for (const auto& rule : store.policies.rules) {
    if (rule.id.empty()) {
      flag("policy rule with empty id");
    } else if (!rule_ids.insert(rule.id).second) {
      flag("duplicate policy rule id: " + rule.id);
    }
  }
  for (ConstraintKind kind : {ConstraintKind::count, ConstraintKind::period,
                              ConstraintKind::ip}) {
    if (std::find(store.policies.constraints.begin(),
                  store.policies.constraints.end(),
                  kind) == store.policies.constraints.end()) {
      flag("constraint set is missing a kind");
    }
  }

  for (const auto& [rname, threshold] : store.reslist) {
    if (threshold < 0.0 || threshold > 1.0) {
      flag("reslist threshold out of [0,1] for " + rname);
    }
  }
  return out;
}

namespace {

json window_to_json(const TimeWindow& w) {
  char s[16], e[16];
  std::snprintf(s, sizeof(s), "%02d:%02d", w.start_min / 60, w.start_min % 60);
  std::snprintf(e, sizeof(e), "%02d:%02d", w.end_min / 60, w.end_min % 60);
  return json{{"start", s}, {"end", e}};
}

TimeWindow window_from_json(const json& j) {
  auto start = clock::parse_hhmm(j.at("start").get<std::string>());
  auto end = clock::parse_hhmm(j.at("end").get<std::string>());
  if (!start || !end) {
    raise(ErrorCode::invalid_config, "bad time window: " + j.dump());
  }
  return TimeWindow{*start, *end};
}

Op op_from_json(const json& j) {
  auto op = parse_op(j.get<std::string>());
  if (!op) {
    raise(ErrorCode::invalid_config, "unknown op: " + j.dump());
  }
  return *op;
}

}  // namespace

json store_to_json(const AttributeStore& store) {
  json users = json::array();
  for (const auto& u : store.users) {
    json ju{{"uname", u.uname},
            {"ugroup", u.ugroup},
            {"agent", u.agent},
            {"t_init", u.t_init}};
    auto pw = store.passwords.find(u.uname);
    if (pw != store.passwords.end()) {
      ju["password"] = pw->second;
    }
    users.push_back(std::move(ju));
  }

  json resources = json::array();
  for (const auto& r : store.resources) {
    resources.push_back({{"rname", r.rname}, {"oname", r.oname}});
  }

  json speriod = json::object();
  for (const auto& [service, windows] : store.env.speriod) {
    json arr = json::array();
    for (const auto& w : windows) {
      arr.push_back(window_to_json(w));
    }
    speriod[service] = std::move(arr);
  }

  json policies = json::array();
  for (const auto& rule : store.policies.rules) {
    policies.push_back(
        {{"id", rule.id},
         {"user_match", rule.user_match},
         {"rname", rule.rname},
         {"op", op_label(rule.op)},
         {"status", rule.status == RuleStatus::allow ? "allow" : "deny"}});
  }

  json doc{
      {"users", std::move(users)},
      {"resources", std::move(resources)},
      {"services", store.services},
      {"env",
       {{"ip_wl", store.env.ip_wl},
        {"speriod", std::move(speriod)},
        {"threshold", store.env.threshold}}},
      {"policies", std::move(policies)},
      {"reslist", store.reslist},
  };
  if (!store.group_t_init.empty()) {
    doc["group_t_init"] = store.group_t_init;
  }
  if (store.tz_offset_min != 0) {
    doc["timezone_offset_minutes"] = store.tz_offset_min;
  }
  return doc;
}

AttributeStore store_from_json(const json& doc) {
  AttributeStore store;
  try {
    store.tz_offset_min = doc.value("timezone_offset_minutes", 0);
    if (doc.contains("group_t_init")) {
      store.group_t_init =
          doc.at("group_t_init").get<std::map<std::string, double>>();
    }

    for (const auto& ju : doc.value("users", json::array())) {
      UserAttr u;
      u.uname = ju.at("uname").get<std::string>();
      u.ugroup = ju.value("ugroup", "");
      u.agent = ju.value("agent", "");
      if (ju.contains("t_init")) {
        u.t_init = ju.at("t_init").get<double>();
      } else if (auto it = store.group_t_init.find(u.ugroup);
                 it != store.group_t_init.end()) {
        u.t_init = it->second;
      }
      if (ju.contains("password")) {
        store.passwords[u.uname] = ju.at("password").get<std::string>();
      }
      store.users.push_back(std::move(u));
    }

    for (const auto& jr : doc.value("resources", json::array())) {
      store.resources.push_back({jr.at("rname").get<std::string>(),
                                 jr.at("oname").get<std::string>()});
    }

    store.services = doc.value("services", std::vector<std::string>{});

    if (doc.contains("env")) {
      const json& env = doc.at("env");
      store.env.ip_wl = env.value("ip_wl", std::set<std::string>{});
      if (env.contains("speriod")) {
        for (const auto& [service, arr] : env.at("speriod").items()) {
          std::vector<TimeWindow> windows;
          for (const auto& jw : arr) {
            windows.push_back(window_from_json(jw));
          }
          store.env.speriod[service] = std::move(windows);
        }
      }
      if (env.contains("threshold")) {
        store.env.threshold =
            env.at("threshold").get<std::map<std::string, long>>();
      }
    }

    for (const auto& jp : doc.value("policies", json::array())) {
      PolicyRule rule;
      rule.id = jp.at("id").get<std::string>();
      rule.user_match = jp.at("user_match").get<std::string>();
      rule.rname = jp.at("rname").get<std::string>();
      rule.op = op_from_json(jp.at("op"));
      std::string status = jp.at("status").get<std::string>();
      if (status == "allow") {
        rule.status = RuleStatus::allow;
      } else if (status == "deny") {
        rule.status = RuleStatus::deny;
      } else {
        raise(ErrorCode::invalid_config, "rule status must be allow|deny");
      }
      store.policies.rules.push_back(std::move(rule));
    }

    if (doc.contains("reslist")) {
      store.reslist = doc.at("reslist").get<std::map<std::string, double>>();
    }
  } catch (const json::exception& e) {
    raise(ErrorCode::invalid_config, std::string("bad config: ") + e.what());
  }
  return store;
}

AttributeStore load_store_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    raise(ErrorCode::io_error, "cannot open config: " + path);
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    raise(ErrorCode::invalid_config,
          std::string("config is not valid JSON: ") + e.what());
  }
  return store_from_json(doc);
}

}  // namespace tdacs::model
