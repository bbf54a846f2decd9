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

#include "tdacs/tdacs.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "common/error.hpp"
#include "gateway/gateway.hpp"
#include "harness/harness.hpp"

using nlohmann::json;

struct tdacs_gateway {
  std::unique_ptr<tdacs::gateway::GatewayService> service;
  std::string config_path;
  std::string last_error;
};

namespace {

tdacs_status status_for(tdacs::ErrorCode code) {
  using tdacs::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument:
      return TDACS_ERR_INVALID_ARG;
    case ErrorCode::invalid_config:
      return TDACS_ERR_CONFIG;
    case ErrorCode::unknown_user:
      return TDACS_ERR_UNKNOWN_USER;
    case ErrorCode::auth_failed:
      return TDACS_ERR_AUTH_FAILED;
    case ErrorCode::unknown_resource:
      return TDACS_ERR_UNKNOWN_RESOURCE;
    case ErrorCode::token_malformed:
      return TDACS_ERR_TOKEN_MALFORMED;
    case ErrorCode::token_tampered:
      return TDACS_ERR_TOKEN_TAMPERED;
    case ErrorCode::ip_not_whitelisted:
      return TDACS_ERR_IP_NOT_WHITELISTED;
    case ErrorCode::duplicate_rule_id:
      return TDACS_ERR_DUPLICATE_RULE;
    case ErrorCode::unknown_rule_id:
      return TDACS_ERR_UNKNOWN_RULE;
    case ErrorCode::out_of_period:
      return TDACS_ERR_OUT_OF_PERIOD;
    case ErrorCode::duplicate_segment_key:
      return TDACS_ERR_DUPLICATE_SEGMENT;
    case ErrorCode::not_anchored:
      return TDACS_ERR_NOT_ANCHORED;
    case ErrorCode::tampered_history:
      return TDACS_ERR_TAMPERED_HISTORY;
    case ErrorCode::no_history:
      return TDACS_ERR_NO_HISTORY;
    case ErrorCode::backend_unavailable:
      return TDACS_ERR_BACKEND_UNAVAILABLE;
    case ErrorCode::length_mismatch:
      return TDACS_ERR_LENGTH_MISMATCH;
    case ErrorCode::invalid_state:
      return TDACS_ERR_STATE;
    case ErrorCode::io_error:
      return TDACS_ERR_IO;
    case ErrorCode::internal:
      return TDACS_ERR_INTERNAL;
  }
  return TDACS_ERR_INTERNAL;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) {
    std::memcpy(out, s.c_str(), s.size() + 1);
  }
  return out;
}

template <typename Fn>
tdacs_status guarded(tdacs_gateway* gw, Fn&& fn) {
  if (gw == nullptr || !gw->service) {
    return TDACS_ERR_INVALID_ARG;
  }
  try {
    gw->last_error.clear();
    return fn();
  } catch (const tdacs::Error& e) {
    gw->last_error = e.what();
    return status_for(e.code());
  } catch (const std::exception& e) {
    gw->last_error = e.what();
    return TDACS_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

tdacs_status tdacs_gateway_open(const char* config_path,
                                const char* ledger_dir, tdacs_gateway** out) {
  if (config_path == nullptr || out == nullptr) {
    return TDACS_ERR_INVALID_ARG;
  }
  *out = nullptr;
  auto handle = std::make_unique<tdacs_gateway>();
  try {
    std::ifstream in(config_path);
    if (!in) {
      return TDACS_ERR_IO;
    }
    json doc;
    in >> doc;
    handle->service = std::make_unique<tdacs::gateway::GatewayService>(
        doc, ledger_dir == nullptr ? "" : ledger_dir);
    handle->config_path = config_path;
  } catch (const tdacs::Error& e) {
    return status_for(e.code());
  } catch (const std::exception&) {
    return TDACS_ERR_CONFIG;
  }
  *out = handle.release();
  return TDACS_OK;
}

void tdacs_gateway_close(tdacs_gateway* gw) {
  if (gw != nullptr) {
    if (gw->service) {
      try {
        gw->service->save_ledger();
      } catch (...) {
      }
    }
    delete gw;
  }
}

const char* tdacs_status_name(tdacs_status st) {
  switch (st) {
    case TDACS_OK:
      return "ok";
    case TDACS_ERR_INVALID_ARG:
      return "invalid_argument";
    case TDACS_ERR_CONFIG:
      return "invalid_config";
    case TDACS_ERR_UNKNOWN_USER:
      return "unknown_user";
    case TDACS_ERR_AUTH_FAILED:
      return "auth_failed";
    case TDACS_ERR_UNKNOWN_RESOURCE:
      return "unknown_resource";
    case TDACS_ERR_TOKEN_MALFORMED:
      return "token_malformed";
    case TDACS_ERR_TOKEN_TAMPERED:
      return "token_tampered";
    case TDACS_ERR_IP_NOT_WHITELISTED:
      return "ip_not_whitelisted";
    case TDACS_ERR_DUPLICATE_RULE:
      return "duplicate_rule_id";
    case TDACS_ERR_UNKNOWN_RULE:
      return "unknown_rule_id";
    case TDACS_ERR_OUT_OF_PERIOD:
      return "out_of_period";
    case TDACS_ERR_DUPLICATE_SEGMENT:
      return "duplicate_segment_key";
    case TDACS_ERR_NOT_ANCHORED:
      return "not_anchored";
    case TDACS_ERR_TAMPERED_HISTORY:
      return "tampered_history";
    case TDACS_ERR_NO_HISTORY:
      return "no_history";
    case TDACS_ERR_BACKEND_UNAVAILABLE:
      return "backend_unavailable";
    case TDACS_ERR_LENGTH_MISMATCH:
      return "length_mismatch";
    case TDACS_ERR_STATE:
      return "invalid_state";
    case TDACS_ERR_IO:
      return "io_error";
    case TDACS_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

const char* tdacs_last_error(const tdacs_gateway* gw) {
  return gw == nullptr ? "" : gw->last_error.c_str();
}

void tdacs_string_free(char* s) { std::free(s); }

tdacs_status tdacs_issue_token(tdacs_gateway* gw, const char* uname,
                               const char* password, const char* ip,
                               char** token_out) {
  if (uname == nullptr || password == nullptr || ip == nullptr ||
      token_out == nullptr) {
    return TDACS_ERR_INVALID_ARG;
  }
  return guarded(gw, [&]() {
    std::string token =
        gw->service->issue_token({uname, password, ip});
    *token_out = dup_string(token);
    return TDACS_OK;
  });
}

tdacs_status tdacs_access(tdacs_gateway* gw, const char* request_json,
                          char** decision_json_out) {
  if (request_json == nullptr || decision_json_out == nullptr) {
    return TDACS_ERR_INVALID_ARG;
  }
  return guarded(gw, [&]() {
    json body;
    try {
      body = json::parse(request_json);
    } catch (const json::exception& e) {
      gw->last_error = e.what();
      return TDACS_ERR_INVALID_ARG;
    }
    tdacs::decision::ResourceRequest req;
    try {
      req.uname = body.at("uname").get<std::string>();
      req.oname = body.value("oname", "");
      req.rname = body.at("rname").get<std::string>();
      auto op = tdacs::model::parse_op(body.at("op").get<std::string>());
      if (!op) {
        gw->last_error = "unknown op";
        return TDACS_ERR_INVALID_ARG;
      }
      req.op = *op;
      req.ip = body.at("ip").get<std::string>();
      if (body.contains("at")) {
        auto at =
            tdacs::clock::parse_timestamp(body.at("at").get<std::string>());
        if (!at) {
          gw->last_error = "bad at timestamp";
          return TDACS_ERR_INVALID_ARG;
        }
        req.at = *at;
      } else {
        req.at = tdacs::clock::now();
      }
    } catch (const json::exception& e) {
      gw->last_error = e.what();
      return TDACS_ERR_INVALID_ARG;
    }
    uint64_t payload_size = body.value("payload_size", 0ULL);
    auto outcome = gw->service->handle_access(
        req, body.at("token").get<std::string>(), payload_size);
    *decision_json_out =
        dup_string(tdacs::gateway::decision_to_json(outcome.decision).dump());
    return TDACS_OK;
  });
}

tdacs_status tdacs_proxy_access(tdacs_gateway* gw, const char* uname,
                                const char* rname, char** result_json_out) {
  if (uname == nullptr || rname == nullptr || result_json_out == nullptr) {
    return TDACS_ERR_INVALID_ARG;
  }
  return guarded(gw, [&]() {
    auto d = gw->service->proxy_access(uname, rname, tdacs::clock::now());
    *result_json_out =
        dup_string(tdacs::gateway::trust_decision_to_json(d).dump());
    return TDACS_OK;
  });
}

tdacs_status tdacs_scenario_run(tdacs_gateway* gw, char** summary_json_out) {
  return guarded(gw, [&]() {
    const json& doc = gw->service->scenario_doc();
    if (doc.is_null() || doc.empty()) {
      gw->last_error = "config has no scenario section";
      return TDACS_ERR_CONFIG;
    }
    auto cfg =
        tdacs::harness::scenario_from_json(doc, gw->service->granularity());
    auto summary = tdacs::harness::generate_scenario(cfg, *gw->service);
    if (summary_json_out != nullptr) {
      *summary_json_out = dup_string(json{{"users", summary.users},
                                          {"segments", summary.segments},
                                          {"records", summary.records}}
                                         .dump());
    }
    return TDACS_OK;
  });
}

tdacs_status tdacs_trust_report(tdacs_gateway* gw, const char* uname,
                                char** text_out, char** json_out) {
  return guarded(gw, [&]() {
    if (uname != nullptr && *uname != '\0') {
      auto detail = tdacs::harness::user_trust_detail(*gw->service, uname);
      if (text_out != nullptr) *text_out = dup_string(detail.text);
      if (json_out != nullptr) *json_out = dup_string(detail.to_json().dump());
    } else {
      auto report = tdacs::harness::trust_report(*gw->service);
      if (text_out != nullptr) *text_out = dup_string(report.text);
      if (json_out != nullptr) *json_out = dup_string(report.to_json().dump());
    }
    return TDACS_OK;
  });
}

tdacs_status tdacs_replay(tdacs_gateway* gw, const char* trace_path,
                          int* mismatches_out, char** report_json_out) {
  if (trace_path == nullptr) {
    return TDACS_ERR_INVALID_ARG;
  }
  return guarded(gw, [&]() {
    auto trace = tdacs::harness::load_trace_file(trace_path);
    auto report = tdacs::harness::replay_trace(trace, *gw->service);
    if (mismatches_out != nullptr) {
      *mismatches_out = report.mismatches;
    }
    if (report_json_out != nullptr) {
      *report_json_out = dup_string(report.to_json().dump());
    }
    return TDACS_OK;
  });
}

tdacs_status tdacs_ledger_verify(tdacs_gateway* gw, int* ok_out,
                                 char** report_json_out) {
  return guarded(gw, [&]() {
    auto& ledger = gw->service->ledger();
    bool all_ok = ledger.chain_ok();
    json segments = json::array();
    for (const auto& block : ledger.chain()) {
      json js{{"segment_key", block.segment_key}, {"index", block.index}};
      if (ledger.find_segment(block.segment_key) == nullptr) {
        js["status"] = "purged";
      } else if (ledger.validate(block.segment_key)) {
        js["status"] = "valid";
      } else {
        js["status"] = "tampered";
        all_ok = false;
      }
      segments.push_back(std::move(js));
    }
    if (ok_out != nullptr) {
      *ok_out = all_ok ? 1 : 0;
    }
    if (report_json_out != nullptr) {
      *report_json_out = dup_string(json{{"chain_ok", ledger.chain_ok()},
                                         {"segments", std::move(segments)},
                                         {"ok", all_ok}}
                                        .dump());
    }
    return TDACS_OK;
  });
}

tdacs_status tdacs_ledger_anchor(tdacs_gateway* gw, const char* segment_key,
                                 char** block_json_out) {
  if (segment_key == nullptr) {
    return TDACS_ERR_INVALID_ARG;
  }
  return guarded(gw, [&]() {
    auto block = gw->service->ledger().anchor(segment_key);
    gw->service->ledger().save();
    if (block_json_out != nullptr) {
      *block_json_out =
          dup_string(json{{"index", block.index},
                          {"segment_key", block.segment_key},
                          {"hash_value", block.hash_value},
                          {"block_hash", block.block_hash},
                          {"tx_hash", block.tx_hash}}
                         .dump());
    }
    return TDACS_OK;
  });
}

tdacs_status tdacs_serve(tdacs_gateway* gw, const char* host, int port) {
  if (host == nullptr) {
    return TDACS_ERR_INVALID_ARG;
  }
  return guarded(gw, [&]() {
    // The config file is watched while serving so resList edits apply
    // without a restart.
    return gw->service->serve(host, port, gw->config_path) ? TDACS_OK
                                                           : TDACS_ERR_IO;
  });
}

tdacs_status tdacs_stop(tdacs_gateway* gw) {
  return guarded(gw, [&]() {
    gw->service->stop();
    return TDACS_OK;
  });
}

}  // extern "C"
