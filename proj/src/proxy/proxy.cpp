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

#include "proxy/proxy.hpp"

#include <chrono>
#include <thread>

#include "common/error.hpp"

namespace tdacs::proxy {

void BackendSimulator::configure(const std::string& oname, ServiceConfig cfg) {
  std::unique_lock lock(mu_);
  services_[oname] = std::move(cfg);
}

BackendSimulator::Response BackendSimulator::invoke(
    const std::string& oname, const std::string& rname, model::Op op,
    uint64_t payload_size) const {
  (void)rname;
  (void)op;
  ServiceConfig cfg;
  {
    std::shared_lock lock(mu_);
    auto it = services_.find(oname);
    if (it != services_.end()) {
      cfg = it->second;
    }
  }
  if (cfg.latency_ms > 0) {
    std::this_thread::sleep_for(std::chrono::milliseconds(cfg.latency_ms));
  }
  Response resp;
  resp.oname = oname;
  resp.ok = !cfg.fail;
  resp.payload = cfg.fail ? "" : cfg.payload;
  resp.payload_size = payload_size;
  return resp;
}

ProxyService::ProxyService(const model::AttributeStore* store,
                           ledger::LedgerStore* ledger,
                           trust::TrustEngine* trust,
                           const BackendSimulator* backend,
                           clock::Granularity granularity)
    : store_(store),
      ledger_(ledger),
      trust_(trust),
      backend_(backend),
      granularity_(granularity),
      reslist_(store->reslist) {}

ProxySession ProxyService::assign_agent(const std::string& uname,
                                        int64_t now) {
  std::lock_guard lock(sessions_mu_);
  auto it = sessions_.find(uname);
  if (it != sessions_.end()) {
    return it->second;
  }
  const model::UserAttr* user = store_->find_user(uname);
  if (user == nullptr) {
    raise(ErrorCode::unknown_user, "unknown user: " + uname);
  }
  ProxySession session{uname, user->agent, now};
  sessions_[uname] = session;
  return session;
}

void ProxyService::record(const std::string& uname, const std::string& rname,
                          model::Op op, int64_t tc, int flag) {
  ledger_->append_observed(uname, rname, op, tc, flag, granularity_);
}

double ProxyService::effective_trust(const std::string& uname, int64_t now) {
  try {
    return trust_->evaluate_user(uname, now).ts;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::no_history) {
      // Before any behavior exists, permissions follow the initial trust.
      return trust_->initial_trust(uname);
    }
    throw;
  }
}

TrustDecision ProxyService::authorize_by_trust(const std::string& uname,
                                               const std::string& rname,
                                               int64_t now, model::Op op) {
  TrustDecision decision;
  decision.rname = rname;
  {
    std::shared_lock lock(reslist_mu_);
    auto it = reslist_.find(rname);
    if (it == reslist_.end()) {
      raise(ErrorCode::unknown_resource,
            "resource has no trust threshold: " + rname);
    }
    decision.threshold = it->second;
  }

  try {
    decision.ts = effective_trust(uname, now);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::tampered_history) {
      throw;
    }
    decision.verdict = TrustVerdict::deny;
    decision.reason = TrustDecision::Reason::tampered_history;
    record(uname, rname, op, now, 0);
    return decision;
  }

  if (*decision.ts >= decision.threshold) {
    decision.verdict = TrustVerdict::grant;
    decision.reason = TrustDecision::Reason::ok;
    record(uname, rname, op, now, 1);
  } else {
    decision.verdict = TrustVerdict::deny;
    decision.reason = TrustDecision::Reason::low_trust;
    record(uname, rname, op, now, 0);
  }
  return decision;
}

std::set<std::string> ProxyService::permitted_resources(
    const std::string& uname, int64_t now) {
  double ts;
  try {
    ts = effective_trust(uname, now);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::tampered_history) {
      return {};  // fail closed
    }
    throw;
  }
  std::set<std::string> out;
  std::shared_lock lock(reslist_mu_);
  for (const auto& [rname, threshold] : reslist_) {
    if (ts >= threshold) {
      out.insert(rname);
    }
  }
  return out;
}

BackendSimulator::Response ProxyService::forward_request(
    const decision::ResourceRequest& req, const ProxySession& session,
    const TrustDecision& grant, uint64_t payload_size) {
  if (grant.verdict != TrustVerdict::grant || grant.rname != req.rname ||
      session.uname != req.uname) {
    raise(ErrorCode::invalid_argument,
          "forward_request needs a matching trust grant for " + req.rname);
  }
  auto resp = backend_->invoke(req.oname, req.rname, req.op, payload_size);
  if (!resp.ok) {
    record(req.uname, req.rname, req.op, req.at, 0);
    raise(ErrorCode::backend_unavailable,
          "backend " + req.oname + " is unavailable");
  }
  record(req.uname, req.rname, req.op, req.at, 1);
  return resp;
}

void ProxyService::reload_reslist(const std::map<std::string, double>& reslist) {
  std::unique_lock lock(reslist_mu_);
  reslist_ = reslist;
}

std::map<std::string, double> ProxyService::reslist() const {
  std::shared_lock lock(reslist_mu_);
  return reslist_;
}

}  // namespace tdacs::proxy
