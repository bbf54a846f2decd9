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

// Access proxy: least-privilege agent sessions, per-resource trust
// thresholds (resList), forwarding to simulated backend services, and the
// behavior records every grant/deny leaves behind.

#ifndef TDACS_PROXY_PROXY_HPP
#define TDACS_PROXY_PROXY_HPP

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>

#include "decision/decision.hpp"
#include "ledger/ledger.hpp"
#include "model/model.hpp"
#include "trust/trust.hpp"

namespace tdacs::proxy {

struct ResListEntry {
  std::string rname;
  double trust_threshold = 0.0;  // in [0,1]
};

struct ProxySession {
  std::string uname;
  std::string agent;
  int64_t created_at = 0;
};

enum class TrustVerdict { grant, deny };

struct TrustDecision {
  TrustVerdict verdict = TrustVerdict::deny;
  std::optional<double> ts;  // absent when the history failed validation
  double threshold = 0.0;
  std::string rname;
  enum class Reason { ok, low_trust, tampered_history } reason = Reason::ok;
};

// In-process stand-ins for the backend services, keyed by service name.
// Responses carry a declared payload size; no payload bytes are
// materialized.
class BackendSimulator {
 public:
  struct ServiceConfig {
    bool fail = false;
    int latency_ms = 0;
    std::string payload = "ok";
  };

  struct Response {
    bool ok = false;
    std::string oname;
    std::string payload;
    uint64_t payload_size = 0;
  };

  void configure(const std::string& oname, ServiceConfig cfg);
  Response invoke(const std::string& oname, const std::string& rname,
                  model::Op op, uint64_t payload_size) const;

 private:
  mutable std::shared_mutex mu_;
  std::map<std::string, ServiceConfig> services_;
};

class ProxyService {
 public:
  ProxyService(const model::AttributeStore* store,
               ledger::LedgerStore* ledger, trust::TrustEngine* trust,
               const BackendSimulator* backend,
               clock::Granularity granularity);

  // The user's preconfigured least-privilege agent; stable across calls.
  ProxySession assign_agent(const std::string& uname, int64_t now);

  // Grant iff TS >= threshold(rname) (inclusive).  The outcome is recorded
  // as one behavior record (flag 1 on grant, 0 on deny); a tampered history
  // denies.  Raises unknown_resource for an rname missing from resList.
  TrustDecision authorize_by_trust(const std::string& uname,
                                   const std::string& rname, int64_t now,
                                   model::Op op = model::Op::read);

  // { r : TS >= threshold(r) }.  Users without history are scored at their
  // initial trust; a tampered history grants nothing.
  std::set<std::string> permitted_resources(const std::string& uname,
                                            int64_t now);

  // Requires a prior grant for the same resource; raises invalid_argument
  // otherwise (caller bug, not a decision).  Backend failure records
  // flag=0 and raises backend_unavailable; success records flag=1.
  BackendSimulator::Response forward_request(
      const decision::ResourceRequest& req, const ProxySession& session,
      const TrustDecision& grant, uint64_t payload_size = 0);

  void reload_reslist(const std::map<std::string, double>& reslist);
  std::map<std::string, double> reslist() const;

 private:
  double effective_trust(const std::string& uname, int64_t now);
  void record(const std::string& uname, const std::string& rname,
              model::Op op, int64_t tc, int flag);

  const model::AttributeStore* store_;
  ledger::LedgerStore* ledger_;
  trust::TrustEngine* trust_;
  const BackendSimulator* backend_;
  clock::Granularity granularity_;

  mutable std::shared_mutex reslist_mu_;
  std::map<std::string, double> reslist_;

  std::mutex sessions_mu_;
  std::map<std::string, ProxySession> sessions_;
};

}  // namespace tdacs::proxy

#endif  // TDACS_PROXY_PROXY_HPP
