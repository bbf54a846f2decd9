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

// tdacs command line front end.  Everything goes through the public C API.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "tdacs/tdacs.h"

namespace {

tdacs_gateway* g_serving = nullptr;

void handle_signal(int) {
  if (g_serving != nullptr) {
    tdacs_stop(g_serving);
  }
}

struct GatewayHandle {
  tdacs_gateway* gw = nullptr;
  ~GatewayHandle() { tdacs_gateway_close(gw); }
};

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { tdacs_string_free(s); }
};

int open_gateway(const std::string& config, const std::string& ledger,
                 GatewayHandle& handle) {
  tdacs_status st = tdacs_gateway_open(
      config.c_str(), ledger.empty() ? nullptr : ledger.c_str(), &handle.gw);
  if (st != TDACS_OK) {
    std::cerr << "error: cannot open gateway (" << tdacs_status_name(st)
              << ")\n";
    return 1;
  }
  return 0;
}

int fail(tdacs_gateway* gw, tdacs_status st) {
  std::cerr << "error: " << tdacs_status_name(st);
  const char* msg = tdacs_last_error(gw);
  if (msg != nullptr && *msg != '\0') {
    std::cerr << ": " << msg;
  }
  std::cerr << "\n";
  return 1;
}

void write_file(const std::string& path, const char* content) {
  if (path.empty() || content == nullptr) return;
  std::ofstream out(path);
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tdacs - ABAC + trust dynamic authorization gateway"};
  app.require_subcommand(1);

  std::string config;
  std::string ledger;
  app.add_option("--config", config, "gateway config file (JSON)")
      ->required();
  app.add_option("--ledger", ledger, "ledger directory (default: in-memory)");

  // serve
  auto* serve = app.add_subcommand("serve", "run the HTTP gateway");
  std::string host = "127.0.0.1";
  int port = 8080;
  serve->add_option("--host", host, "bind address");
  serve->add_option("--port", port, "bind port");

  // scenario run
  auto* scenario = app.add_subcommand("scenario", "scenario engine");
  auto* scenario_run = scenario->add_subcommand(
      "run", "generate + anchor the configured behavior scenario");
  std::string scenario_out;
  scenario_run->add_option("--out", scenario_out,
                           "write trust report files into this directory");

  // trust report
  auto* trust = app.add_subcommand("trust", "trust evaluation");
  auto* trust_report = trust->add_subcommand(
      "report", "month-by-month trust and permission table");
  std::string report_user;
  std::string report_out;
  trust_report->add_option("--user", report_user,
                           "per-segment detail for one user");
  trust_report->add_option("--out", report_out,
                           "also write report.txt / report.json here");

  // ledger verify / anchor
  auto* ledger_cmd = app.add_subcommand("ledger", "behavior ledger");
  auto* ledger_verify = ledger_cmd->add_subcommand(
      "verify", "validate the anchor chain and all anchored segments");
  auto* ledger_anchor =
      ledger_cmd->add_subcommand("anchor", "anchor one open segment");
  std::string segment_key;
  ledger_anchor->add_option("segment_key", segment_key, "e.g. A/2020-W01")
      ->required();

  // replay
  auto* replay = app.add_subcommand("replay", "replay a JSONL trace");
  std::string trace_path;
  replay->add_option("trace", trace_path, "trace file, one event per line")
      ->required();

  CLI11_PARSE(app, argc, argv);

  GatewayHandle handle;
  if (int rc = open_gateway(config, ledger, handle); rc != 0) {
    return rc;
  }

  if (serve->parsed()) {
    g_serving = handle.gw;
    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    std::cout << "tdacs gateway listening on " << host << ":" << port << "\n";
    tdacs_status st = tdacs_serve(handle.gw, host.c_str(), port);
    g_serving = nullptr;
    return st == TDACS_OK ? 0 : fail(handle.gw, st);
  }

  if (scenario_run->parsed()) {
    OwnedString summary;
    tdacs_status st = tdacs_scenario_run(handle.gw, &summary.s);
    if (st != TDACS_OK) {
      return fail(handle.gw, st);
    }
    std::cout << "scenario generated: " << summary.s << "\n";
    if (!scenario_out.empty()) {
      OwnedString text, jsn;
      st = tdacs_trust_report(handle.gw, nullptr, &text.s, &jsn.s);
      if (st != TDACS_OK) {
        return fail(handle.gw, st);
      }
      write_file(scenario_out + "/report.txt", text.s);
      write_file(scenario_out + "/report.json", jsn.s);
      std::cout << "reports written to " << scenario_out << "\n";
    }
    return 0;
  }

  if (trust_report->parsed()) {
    OwnedString text, jsn;
    tdacs_status st = tdacs_trust_report(
        handle.gw, report_user.empty() ? nullptr : report_user.c_str(),
        &text.s, &jsn.s);
    if (st != TDACS_OK) {
      return fail(handle.gw, st);
    }
    std::cout << text.s;
    if (!report_out.empty()) {
      write_file(report_out + "/report.txt", text.s);
      write_file(report_out + "/report.json", jsn.s);
    }
    return 0;
  }

  if (ledger_verify->parsed()) {
    int ok = 0;
    OwnedString report;
    tdacs_status st = tdacs_ledger_verify(handle.gw, &ok, &report.s);
    if (st != TDACS_OK) {
      return fail(handle.gw, st);
    }
    std::cout << report.s << "\n";
    std::cout << (ok ? "ledger OK" : "LEDGER INTEGRITY FAILURE") << "\n";
    return ok ? 0 : 1;
  }

  if (ledger_anchor->parsed()) {
    OwnedString block;
    tdacs_status st =
        tdacs_ledger_anchor(handle.gw, segment_key.c_str(), &block.s);
    if (st != TDACS_OK) {
      return fail(handle.gw, st);
    }
    std::cout << "anchored: " << block.s << "\n";
    return 0;
  }

  if (replay->parsed()) {
    int mismatches = 0;
    OwnedString report;
    tdacs_status st =
        tdacs_replay(handle.gw, trace_path.c_str(), &mismatches, &report.s);
    if (st != TDACS_OK) {
      return fail(handle.gw, st);
    }
    std::cout << report.s << "\n";
    if (mismatches != 0) {
      std::cerr << mismatches << " expectation mismatch(es)\n";
      return 1;
    }
    return 0;
  }

  return 0;
}
