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

#include "decision/decision.hpp"

#include <algorithm>

#include "common/clock.hpp"
#include "common/error.hpp"

namespace tdacs::decision {

CountAction check_count(long count, long quota) {
  return count < quota ? CountAction::increment : CountAction::reject;
}

bool check_period(int64_t at, const std::vector<model::TimeWindow>& windows,
                  int tz_offset_min) {
  int minute = clock::minutes_of_day(at, tz_offset_min);
  for (const auto& w : windows) {
    if (minute >= w.start_min && minute < w.end_min) {
      return true;
    }
  }
  return false;
}

bool check_ip(const std::string& ip, const std::set<std::string>& ip_wl) {
  return ip_wl.count(ip) != 0;
}

PolicyMatch match_policy(const ResourceRequest& req,
                         const model::PolicySet& ps,
                         const model::UserAttr* user) {
  for (const auto& rule : ps.rules) {
    bool user_ok = rule.user_match == req.uname ||
                   (user != nullptr && !user->ugroup.empty() &&
                    rule.user_match == user->ugroup);
    if (user_ok && rule.rname == req.rname && rule.op == req.op) {
      return rule.status == model::RuleStatus::allow ? PolicyMatch::allow
                                                     : PolicyMatch::deny;
    }
  }
  return PolicyMatch::no_rule;
}

long CounterStore::count(const std::string& uname,
                         const std::string& service) const {
  std::lock_guard lock(mu_);
  auto it = counts_.find({uname, service});
  return it == counts_.end() ? 0 : it->second;
}

bool CounterStore::try_acquire(const std::string& uname,
                               const std::string& service, long quota) {
  std::lock_guard lock(mu_);
  long& count = counts_[{uname, service}];
  if (check_count(count, quota) == CountAction::reject) {
    return false;
  }
  ++count;
  return true;
}

void CounterStore::reset(const std::string& uname,
                         const std::string& service) {
  std::lock_guard lock(mu_);
  counts_.erase({uname, service});
}

void CounterStore::clear() {
  std::lock_guard lock(mu_);
  counts_.clear();
}

std::map<std::pair<std::string, std::string>, long> CounterStore::snapshot()
    const {
  std::lock_guard lock(mu_);
  return counts_;
}

const char* verdict_name(Verdict v) {
  return v == Verdict::permit ? "permit" : "deny";
}

const char* reason_name(Reason r) {
  switch (r) {
    case Reason::policy_deny:
      return "policy_deny";
    case Reason::no_matching_rule:
      return "no_matching_rule";
    case Reason::quota_exceeded:
      return "quota_exceeded";
    case Reason::outside_period:
      return "outside_period";
    case Reason::ip_rejected:
      return "ip_rejected";
    case Reason::token_invalid:
      return "token_invalid";
    case Reason::trust_below_threshold:
      return "trust_below_threshold";
    case Reason::ok:
      return "ok";
  }
  return "no_matching_rule";
}

Decision access_control_check(const ResourceRequest& req,
                              const std::string& sealed_token,
                              const model::AttributeStore& store,
                              const model::PolicySet& ps,
                              CounterStore& counters,
                              const token::SecretKey& key) {
  token::TokenClaims claims;
  try {
    claims = token::verify_token(sealed_token, req.ip, key);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ip_not_whitelisted) {
      return {Verdict::deny, Reason::ip_rejected};
    }
    return {Verdict::deny, Reason::token_invalid};
  }

  const model::ResourceAttr& resource = find_resource(store, req.rname);

  std::vector<model::TimeWindow> windows;
  if (auto it = claims.speriod.find(resource.oname);
      it != claims.speriod.end()) {
    windows = it->second;
  }
  if (!check_period(req.at, windows, store.tz_offset_min)) {
    return {Verdict::deny, Reason::outside_period};
  }

  long quota = 0;
  if (auto it = claims.threshold.find(resource.oname);
      it != claims.threshold.end()) {
    quota = it->second;
  }
  if (!counters.try_acquire(req.uname, resource.oname, quota)) {
    return {Verdict::deny, Reason::quota_exceeded};
  }

  switch (match_policy(req, ps, store.find_user(req.uname))) {
    case PolicyMatch::allow:
      return {Verdict::permit, Reason::ok};
    case PolicyMatch::deny:
      return {Verdict::deny, Reason::policy_deny};
    case PolicyMatch::no_rule:
      return {Verdict::deny, Reason::no_matching_rule};
  }
  return {Verdict::deny, Reason::no_matching_rule};
}

model::PolicySet policy_admin(AdminAction action, const model::PolicyRule& rule,
                              model::PolicySet ps) {
  auto it = std::find_if(ps.rules.begin(), ps.rules.end(),
                         [&rule](const model::PolicyRule& r) {
                           return r.id == rule.id;
                         });
  switch (action) {
    case AdminAction::add:
      if (it != ps.rules.end()) {
        raise(ErrorCode::duplicate_rule_id, "duplicate rule id: " + rule.id);
      }
      ps.rules.push_back(rule);
      break;
    case AdminAction::query:
      break;
    case AdminAction::update:
      if (it == ps.rules.end()) {
        raise(ErrorCode::unknown_rule_id, "unknown rule id: " + rule.id);
      }
      *it = rule;
      break;
    case AdminAction::remove:
      if (it == ps.rules.end()) {
        raise(ErrorCode::unknown_rule_id, "unknown rule id: " + rule.id);
      }
      ps.rules.erase(it);
      break;
  }
  return ps;
}

const model::PolicyRule* find_rule(const model::PolicySet& ps,
                                   const std::string& id) {
  for (const auto& rule : ps.rules) {
    if (rule.id == id) {
      return &rule;
    }
  }
  return nullptr;
}

}  // namespace tdacs::decision
