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

// Access control decision: the count / period / ip constraints, policy set
// matching, and the staged access-control check that combines them.

#ifndef TDACS_DECISION_DECISION_HPP
#define TDACS_DECISION_DECISION_HPP

#include <cstdint>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "model/model.hpp"
#include "token/token.hpp"

namespace tdacs::decision {

struct ResourceRequest {
  std::string uname;
  std::string oname;
  std::string rname;
  model::Op op = model::Op::read;
  std::string ip;
  int64_t at = 0;  // server-observed request time
};

enum class CountAction { increment, reject };

// Admits while count < quota, so exactly `quota` requests ever pass.
CountAction check_count(long count, long quota);

// True iff the local time-of-day of `at` falls in any [start, end) window.
bool check_period(int64_t at, const std::vector<model::TimeWindow>& windows,
                  int tz_offset_min = 0);

bool check_ip(const std::string& ip, const std::set<std::string>& ip_wl);

enum class PolicyMatch { allow, deny, no_rule };

// First rule whose user predicate (uname or ugroup), rname and op all match
// decides; no match yields no_rule.
PolicyMatch match_policy(const ResourceRequest& req,
                         const model::PolicySet& ps,
                         const model::UserAttr* user);

// Per (uname, service) access counters with atomic check-and-increment.
class CounterStore {
 public:
  long count(const std::string& uname, const std::string& service) const;

  // Increments and returns true only while count < quota; a single slot is
  // never handed to two concurrent callers.
  bool try_acquire(const std::string& uname, const std::string& service,
                   long quota);

  void reset(const std::string& uname, const std::string& service);
  void clear();

  std::map<std::pair<std::string, std::string>, long> snapshot() const;

 private:
  mutable std::mutex mu_;
  std::map<std::pair<std::string, std::string>, long> counts_;
};

enum class Verdict { permit, deny };

enum class Reason {
  policy_deny,
  no_matching_rule,
  quota_exceeded,
  outside_period,
  ip_rejected,
  token_invalid,
  trust_below_threshold,
  ok,
};

const char* verdict_name(Verdict v);
const char* reason_name(Reason r);

struct Decision {
  Verdict verdict = Verdict::deny;
  Reason reason = Reason::no_matching_rule;

  bool operator==(const Decision&) const = default;
};

// Stage order: token verification (tamper before ownership), resource
// lookup, service period, quota (counter bumps only when period and quota
// both pass, even if the policy later denies), then policy match.  The
// first failing stage decides.  Raises unknown_resource for an Rname that
// is not in the store.
Decision access_control_check(const ResourceRequest& req,
                              const std::string& sealed_token,
                              const model::AttributeStore& store,
                              const model::PolicySet& ps,
                              CounterStore& counters,
                              const token::SecretKey& key);

enum class AdminAction { add, query, update, remove };

// Value-in / value-out policy administration.  add raises duplicate_rule_id;
// update/remove raise unknown_rule_id; query returns the set unchanged.
model::PolicySet policy_admin(AdminAction action, const model::PolicyRule& rule,
                              model::PolicySet ps);

const model::PolicyRule* find_rule(const model::PolicySet& ps,
                                   const std::string& id);

}  // namespace tdacs::decision

#endif  // TDACS_DECISION_DECISION_HPP
