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

// ABAC domain model: user / resource / operation / environment attribute
// sets, the policy set, and the attribute store that carries them all.

#ifndef TDACS_MODEL_MODEL_HPP
#define TDACS_MODEL_MODEL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace tdacs::model {

enum class Op {
  read,
  write,
  execute,
  select,
  insert,
  del,  // "delete" in the wire format
  drop,
  copy,
  submit,
};

std::optional<Op> parse_op(std::string_view label);
const char* op_label(Op op);

// Daily wall-clock window, minutes since midnight, [start, end).
struct TimeWindow {
  int start_min = 0;
  int end_min = 0;

  bool operator==(const TimeWindow&) const = default;
};

struct UserAttr {
  std::string uname;
  std::string ugroup;
  std::string agent;
  double t_init = 0.5;

  bool operator==(const UserAttr&) const = default;
};

struct ResourceAttr {
  std::string rname;
  std::string oname;

  bool operator==(const ResourceAttr&) const = default;
};

struct EnvAttr {
  std::set<std::string> ip_wl;
  std::map<std::string, std::vector<TimeWindow>> speriod;
  std::map<std::string, long> threshold;

  bool operator==(const EnvAttr&) const = default;
};

enum class RuleStatus { allow, deny };

struct PolicyRule {
  std::string id;
  std::string user_match;  // matches uname or ugroup
  std::string rname;
  Op op = Op::read;
  RuleStatus status = RuleStatus::deny;

  bool operator==(const PolicyRule&) const = default;
};

enum class ConstraintKind { count, period, ip };

struct PolicySet {
  std::vector<PolicyRule> rules;
  // The three constraint kinds are always evaluated; the list exists so a
  // store can be checked for completeness.
  std::vector<ConstraintKind> constraints{
      ConstraintKind::count, ConstraintKind::period, ConstraintKind::ip};

  bool operator==(const PolicySet&) const = default;
};

struct AttributeStore {
  std::vector<UserAttr> users;
  std::vector<ResourceAttr> resources;
  std::vector<std::string> services;
  EnvAttr env;
  PolicySet policies;
  std::map<std::string, double> reslist;  // rname -> trust threshold

  // User directory for token issuance.
  std::map<std::string, std::string> passwords;
  // Per-group default initial trust, applied when a user entry omits t_init.
  std::map<std::string, double> group_t_init;

  int tz_offset_min = 0;

  const UserAttr* find_user(std::string_view uname) const;

  bool operator==(const AttributeStore&) const = default;
};

// Lookup by Rname; raises unknown_resource when absent.
const ResourceAttr& find_resource(const AttributeStore& store,
                                  std::string_view rname);

// One human-readable entry per broken invariant; empty means well-formed.
std::vector<std::string> validate_store(const AttributeStore& store);

bool ip_syntax_valid(std::string_view ip);

nlohmann::json store_to_json(const AttributeStore& store);
AttributeStore store_from_json(const nlohmann::json& doc);
AttributeStore load_store_file(const std::string& path);

}  // namespace tdacs::model

#endif  // TDACS_MODEL_MODEL_HPP
