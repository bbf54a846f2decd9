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

#include "gateway/gateway.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "common/error.hpp"

namespace tdacs::gateway {

using nlohmann::json;

GatewayConfig parse_config(const json& doc) {
  GatewayConfig cfg;
  cfg.store = model::store_from_json(doc);

  const char* env_key = std::getenv("TDACS_TOKEN_KEY");
  if (env_key != nullptr && *env_key != '\0') {
    cfg.key = token::key_from_hex(env_key);
  } else if (doc.contains("token_key")) {
    cfg.key = token::key_from_hex(doc.at("token_key").get<std::string>());
  } else {
    raise(ErrorCode::invalid_config,
          "no token key: set TDACS_TOKEN_KEY or config field token_key");
  }

  if (doc.contains("trust")) {
    const json& t = doc.at("trust");
    cfg.trust.beta = t.value("beta", 10.0);
    cfg.trust.alpha = t.value("alpha", 0.5);
    cfg.trust.window_n = t.value("window_n", 4);
    if (cfg.trust.beta <= 1.0) {
      raise(ErrorCode::invalid_config, "trust.beta must be > 1");
    }
    if (cfg.trust.alpha < 0.0 || cfg.trust.alpha > 1.0) {
      raise(ErrorCode::invalid_config, "trust.alpha must be in [0,1]");
    }
    if (cfg.trust.window_n < 1) {
      raise(ErrorCode::invalid_config, "trust.window_n must be >= 1");
    }
    if (t.contains("weight_scheme")) {
      std::string scheme = t.at("weight_scheme").get<std::string>();
      if (scheme == "ramp") {
        cfg.trust.scheme = trust::WeightScheme::ramp;
      } else if (scheme == "inverse") {
        cfg.trust.scheme = trust::WeightScheme::inverse;
      } else {
        raise(ErrorCode::invalid_config,
              "trust.weight_scheme must be ramp|inverse");
      }
    }
    if (t.contains("granularity")) {
      auto g = clock::parse_granularity(t.at("granularity").get<std::string>());
      if (!g) {
        raise(ErrorCode::invalid_config,
              "trust.granularity must be day|week|month");
      }
      cfg.granularity = *g;
    }
  }
  return cfg;
}

GatewayService::GatewayService(const json& config_doc,
                               const std::string& ledger_dir)
    : config_(parse_config(config_doc)),
      trust_(&config_.store, &ledger_, config_.trust) {
  auto violations = model::validate_store(config_.store);
  if (!violations.empty()) {
    std::string msg = "config violates store invariants:";
    for (const auto& v : violations) {
      msg += " [" + v + "]";
    }
    raise(ErrorCode::invalid_config, msg);
  }
  if (config_doc.contains("scenario")) {
    scenario_ = std::make_shared<json>(config_doc.at("scenario"));
  }
  if (config_doc.contains("backends")) {
    for (const auto& [oname, jb] : config_doc.at("backends").items()) {
      proxy::BackendSimulator::ServiceConfig sc;
      sc.fail = jb.value("fail", false);
      sc.latency_ms = jb.value("latency_ms", 0);
      sc.payload = jb.value("payload", "ok");
      backend_.configure(oname, sc);
    }
  }
  if (!ledger_dir.empty()) {
    ledger_.open(ledger_dir);
  }
  proxy_ = std::make_unique<proxy::ProxyService>(
      &config_.store, &ledger_, &trust_, &backend_, config_.granularity);
}

GatewayService::~GatewayService() { stop(); }

const json& GatewayService::scenario_doc() const {
  static const json empty;
  return scenario_ ? *scenario_ : empty;
}

std::string GatewayService::issue_token(const token::TokenRequest& req) {
  return token::gen_token(req, config_.store, config_.key, clock::now());
}

std::string GatewayService::mint_for_replay(const std::string& uname) {
  const model::UserAttr* user = config_.store.find_user(uname);
  if (user == nullptr) {
    raise(ErrorCode::unknown_user, "unknown user: " + uname);
  }
  token::TokenClaims claims;
  claims.uname = uname;
  claims.speriod = config_.store.env.speriod;
  claims.ip_wl = config_.store.env.ip_wl;
  claims.threshold = config_.store.env.threshold;
  claims.issued_at = clock::now();
  return token::seal(claims, config_.key);
}

GatewayService::AccessOutcome GatewayService::handle_access(
    const decision::ResourceRequest& req, const std::string& sealed_token,
    uint64_t payload_size) {
  AccessOutcome outcome;
  {
    std::shared_lock lock(policy_mu_);
    outcome.decision = decision::access_control_check(
        req, sealed_token, config_.store, config_.store.policies, counters_,
        config_.key);
  }
  if (outcome.decision.verdict == decision::Verdict::deny) {
    // Failed accesses at the decision stage are behavior too (token theft,
    // unauthorized access).
    ledger_.append_observed(req.uname, req.rname, req.op, req.at, 0,
                            config_.granularity);
    return outcome;
  }

  ledger_.anchor_completed(req.at);
  auto session = proxy_->assign_agent(req.uname, req.at);
  outcome.trust = proxy_->authorize_by_trust(req.uname, req.rname, req.at,
                                             req.op);
  if (outcome.trust->verdict != proxy::TrustVerdict::grant) {
    outcome.decision = {decision::Verdict::deny,
                        decision::Reason::trust_below_threshold};
    return outcome;
  }

  try {
    outcome.service =
        proxy_->forward_request(req, session, *outcome.trust, payload_size);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::backend_unavailable) {
      throw;
    }
    // The authorization stands; the service outcome is recorded as a
    // failed access by forward_request.
  }
  return outcome;
}

proxy::TrustDecision GatewayService::proxy_access(const std::string& uname,
                                                  const std::string& rname,
                                                  int64_t now) {
  if (config_.store.find_user(uname) == nullptr) {
    raise(ErrorCode::unknown_user, "unknown user: " + uname);
  }
  ledger_.anchor_completed(now);
  return proxy_->authorize_by_trust(uname, rname, now);
}

model::PolicySet GatewayService::policy_admin(decision::AdminAction action,
                                              const model::PolicyRule& rule) {
  std::unique_lock lock(policy_mu_);
  config_.store.policies =
      decision::policy_admin(action, rule, config_.store.policies);
  return config_.store.policies;
}

trust::Evaluation GatewayService::trust_evaluation(const std::string& uname,
                                                   int64_t now) {
  ledger_.anchor_completed(now);
  return trust_.evaluate_detailed(uname, now);
}

json decision_to_json(const decision::Decision& d) {
  return json{{"verdict", decision::verdict_name(d.verdict)},
              {"reason", decision::reason_name(d.reason)}};
}

json trust_decision_to_json(const proxy::TrustDecision& d) {
  json out{{"verdict",
            d.verdict == proxy::TrustVerdict::grant ? "grant" : "deny"},
           {"threshold", d.threshold},
           {"resource", d.rname}};
  if (d.ts.has_value()) {
    out["ts"] = *d.ts;
  } else {
    out["ts"] = nullptr;
  }
  return out;
}

namespace {

json error_json(const Error& e) {
  return json{{"error", error_code_name(e.code())}, {"message", e.what()}};
}

int http_status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::auth_failed:
    case ErrorCode::token_tampered:
    case ErrorCode::token_malformed:
      return 401;
    case ErrorCode::unknown_user:
    case ErrorCode::unknown_resource:
      return 404;
    case ErrorCode::invalid_argument:
    case ErrorCode::invalid_config:
      return 400;
    default:
      return 500;
  }
}

}  // namespace

bool GatewayService::serve(const std::string& host, int port,
                           const std::string& config_path_for_reload) {
  {
    std::lock_guard lock(server_mu_);
    if (server_) {
      raise(ErrorCode::invalid_state, "server already running");
    }
    server_ = std::make_unique<httplib::Server>();
  }
  httplib::Server& svr = *server_;

  svr.Post("/token", [this](const httplib::Request& hreq,
                            httplib::Response& hres) {
    try {
      json body = json::parse(hreq.body);
      token::TokenRequest req{body.at("uname").get<std::string>(),
                              body.at("password").get<std::string>(),
                              body.at("ip").get<std::string>()};
      hres.set_content(json{{"token", issue_token(req)}}.dump(),
                       "application/json");
    } catch (const Error& e) {
      hres.status = http_status_for(e.code());
      hres.set_content(error_json(e).dump(), "application/json");
    } catch (const json::exception& e) {
      hres.status = 400;
      hres.set_content(json{{"error", "bad_request"}, {"message", e.what()}}
                           .dump(),
                       "application/json");
    }
  });

  svr.Post("/access", [this](const httplib::Request& hreq,
                             httplib::Response& hres) {
    try {
      json body = json::parse(hreq.body);
      decision::ResourceRequest req;
      req.uname = body.at("uname").get<std::string>();
      req.oname = body.value("oname", "");
      req.rname = body.at("rname").get<std::string>();
      auto op = model::parse_op(body.at("op").get<std::string>());
      if (!op) {
        raise(ErrorCode::invalid_argument, "unknown op");
      }
      req.op = *op;
      req.ip = body.at("ip").get<std::string>();
      if (body.contains("at")) {
        auto at = clock::parse_timestamp(body.at("at").get<std::string>());
        if (!at) {
          raise(ErrorCode::invalid_argument, "bad at timestamp");
        }
        req.at = *at;
      } else {
        req.at = clock::now();
      }
      uint64_t payload_size = body.value("payload_size", 0ULL);
      auto outcome =
          handle_access(req, body.at("token").get<std::string>(),
                        payload_size);
      hres.set_content(decision_to_json(outcome.decision).dump(),
                       "application/json");
    } catch (const Error& e) {
      hres.status = http_status_for(e.code());
      hres.set_content(error_json(e).dump(), "application/json");
    } catch (const json::exception& e) {
      hres.status = 400;
      hres.set_content(json{{"error", "bad_request"}, {"message", e.what()}}
                           .dump(),
                       "application/json");
    }
  });

  svr.Post("/proxy/access", [this](const httplib::Request& hreq,
                                   httplib::Response& hres) {
    try {
      json body = json::parse(hreq.body);
      int64_t now = clock::now();
      if (body.contains("at")) {
        auto at = clock::parse_timestamp(body.at("at").get<std::string>());
        if (!at) {
          raise(ErrorCode::invalid_argument, "bad at timestamp");
        }
        now = *at;
      }
      auto d = proxy_access(body.at("uname").get<std::string>(),
                            body.at("rname").get<std::string>(), now);
      hres.set_content(trust_decision_to_json(d).dump(), "application/json");
    } catch (const Error& e) {
      hres.status = http_status_for(e.code());
      hres.set_content(error_json(e).dump(), "application/json");
    } catch (const json::exception& e) {
      hres.status = 400;
      hres.set_content(json{{"error", "bad_request"}, {"message", e.what()}}
                           .dump(),
                       "application/json");
    }
  });

  // resList entries come from the config; watching the file keeps them
  // hot-reloadable while the server runs.
  std::thread reload_thread;
  std::atomic<bool> reload_stop{false};
  if (!config_path_for_reload.empty()) {
    reload_thread = std::thread([this, &reload_stop,
                                 path = config_path_for_reload]() {
      std::filesystem::file_time_type last{};
      std::error_code ec;
      last = std::filesystem::last_write_time(path, ec);
      while (!reload_stop.load()) {
        std::this_thread::sleep_for(std::chrono::milliseconds(500));
        auto t = std::filesystem::last_write_time(path, ec);
        if (ec || t == last) continue;
        last = t;
        try {
          std::ifstream in(path);
          json doc;
          in >> doc;
          if (doc.contains("reslist")) {
            proxy_->reload_reslist(
                doc.at("reslist").get<std::map<std::string, double>>());
          }
        } catch (...) {
          // Malformed edits are ignored; the old resList stays in force.
        }
      }
    });
  }

  bool ok = svr.listen(host, port);
  reload_stop.store(true);
  if (reload_thread.joinable()) {
    reload_thread.join();
  }
  {
    std::lock_guard lock(server_mu_);
    server_.reset();
  }
  ledger_.save();
  return ok || stopping_.load();
}

void GatewayService::stop() {
  stopping_.store(true);
  std::lock_guard lock(server_mu_);
  if (server_) {
    server_->stop();
  }
}

}  // namespace tdacs::gateway
