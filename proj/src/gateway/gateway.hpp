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

// Gateway composition: token management, access-control decision, trust
// stage and forwarding wired together, plus the HTTP front end.

#ifndef TDACS_GATEWAY_GATEWAY_HPP
#define TDACS_GATEWAY_GATEWAY_HPP

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "decision/decision.hpp"
#include "ledger/ledger.hpp"
#include "model/model.hpp"
#include "proxy/proxy.hpp"
#include "token/token.hpp"
#include "trust/trust.hpp"

namespace httplib {
class Server;
}

namespace tdacs::gateway {

struct GatewayConfig {
  model::AttributeStore store;
  token::SecretKey key{};
  trust::TrustParams trust;
  clock::Granularity granularity = clock::Granularity::week;
  nlohmann::json* scenario = nullptr;  // borrowed during parse only
};

// Parses the config document.  The token key comes from the environment
// variable TDACS_TOKEN_KEY when set, else from the "token_key" field.
GatewayConfig parse_config(const nlohmann::json& doc);

class GatewayService {
 public:
  GatewayService(const nlohmann::json& config_doc,
                 const std::string& ledger_dir);
  ~GatewayService();

  // Step 1-2: authenticate and mint a sealed token.
  std::string issue_token(const token::TokenRequest& req);

  struct AccessOutcome {
    decision::Decision decision;
    std::optional<proxy::TrustDecision> trust;
    std::optional<proxy::BackendSimulator::Response> service;
  };

  // The full pipeline: token verification, Algorithm-1 staged checks, the
  // trust threshold stage, then forwarding.  Every terminal outcome leaves
  // a behavior record.
  AccessOutcome handle_access(const decision::ResourceRequest& req,
                              const std::string& sealed_token,
                              uint64_t payload_size = 0);

  proxy::TrustDecision proxy_access(const std::string& uname,
                                    const std::string& rname, int64_t now);

  model::PolicySet policy_admin(decision::AdminAction action,
                                const model::PolicyRule& rule);

  trust::Evaluation trust_evaluation(const std::string& uname, int64_t now);

  // Mints a token for a configured user without a password round trip;
  // used by trace replay.
  std::string mint_for_replay(const std::string& uname);

  const model::AttributeStore& store() const { return config_.store; }
  ledger::LedgerStore& ledger() { return ledger_; }
  trust::TrustEngine& trust_engine() { return trust_; }
  proxy::ProxyService& proxy() { return *proxy_; }
  proxy::BackendSimulator& backend() { return backend_; }
  decision::CounterStore& counters() { return counters_; }
  const nlohmann::json& scenario_doc() const;
  clock::Granularity granularity() const { return config_.granularity; }
  const token::SecretKey& secret_key() const { return config_.key; }

  void save_ledger() { ledger_.save(); }

  // Blocking HTTP server; stop() may be called from any thread.
  bool serve(const std::string& host, int port,
             const std::string& config_path_for_reload = "");
  void stop();

 private:
  GatewayConfig config_;
  std::shared_ptr<nlohmann::json> scenario_;
  decision::CounterStore counters_;
  ledger::LedgerStore ledger_;
  trust::TrustEngine trust_;
  proxy::BackendSimulator backend_;
  std::unique_ptr<proxy::ProxyService> proxy_;

  std::shared_mutex policy_mu_;

  std::unique_ptr<httplib::Server> server_;
  std::mutex server_mu_;
  std::atomic<bool> stopping_{false};
};

nlohmann::json decision_to_json(const decision::Decision& d);
nlohmann::json trust_decision_to_json(const proxy::TrustDecision& d);

}  // namespace tdacs::gateway

#endif  // TDACS_GATEWAY_GATEWAY_HPP
