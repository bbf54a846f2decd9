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

#include "harness/harness.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "common/error.hpp"

namespace tdacs::harness {

using nlohmann::json;

ScenarioConfig scenario_from_json(const json& doc,
                                  clock::Granularity default_granularity) {
  ScenarioConfig cfg;
  cfg.granularity = default_granularity;
  try {
    auto start = clock::parse_timestamp(doc.at("start").get<std::string>());
    if (!start) {
      raise(ErrorCode::invalid_config, "scenario.start is not a timestamp");
    }
    cfg.start = *start;
    cfg.seed = doc.value("seed", 1ULL);
    if (doc.contains("granularity")) {
      auto g = clock::parse_granularity(doc.at("granularity").get<std::string>());
      if (!g) {
        raise(ErrorCode::invalid_config, "scenario.granularity invalid");
      }
      cfg.granularity = *g;
    }
    for (const auto& [uname, ju] : doc.at("users").items()) {
      ScenarioUser user;
      user.uname = uname;
      if (ju.contains("t_init")) {
        user.t_init = ju.at("t_init").get<double>();
      }
      for (const auto& jw : ju.value("weeks", json::array())) {
        user.weeks.push_back(
            {jw.at(0).get<long>(), jw.at(1).get<long>()});
      }
      cfg.users.push_back(std::move(user));
    }
  } catch (const json::exception& e) {
    raise(ErrorCode::invalid_config,
          std::string("bad scenario config: ") + e.what());
  }
  return cfg;
}

namespace {

uint64_t mix_seed(uint64_t seed, const std::string& uname, size_t week) {
  uint64_t h = 1469598103934665603ULL ^ seed;
  for (char c : uname) {
    h ^= static_cast<uint8_t>(c);
    h *= 1099511628211ULL;
  }
  h ^= week + 1;
  h *= 1099511628211ULL;
  return h;
}

int64_t period_length_step(clock::Granularity g) {
  switch (g) {
    case clock::Granularity::day:
      return 86400;
    case clock::Granularity::week:
      return 7 * 86400;
    case clock::Granularity::month:
      return 0;  // months advance by calendar, handled separately
  }
  return 7 * 86400;
}

}  // namespace

ScenarioSummary generate_scenario(const ScenarioConfig& cfg,
                                  gateway::GatewayService& gw) {
  for (const auto& user : cfg.users) {
    if (gw.store().find_user(user.uname) == nullptr) {
      raise(ErrorCode::invalid_config,
            "scenario user is not in the store: " + user.uname);
    }
    for (const auto& w : user.weeks) {
      if (w.suc < 0 || w.fail < 0) {
        raise(ErrorCode::invalid_config,
              "scenario counts must be non-negative for " + user.uname);
      }
    }
  }

  std::vector<std::string> rnames;
  for (const auto& r : gw.store().resources) {
    rnames.push_back(r.rname);
  }
  if (rnames.empty()) {
    rnames.push_back("R1");
  }
  static const model::Op ops[] = {model::Op::read,   model::Op::write,
                                  model::Op::select, model::Op::insert,
                                  model::Op::copy,   model::Op::submit};

  ScenarioSummary summary;
  summary.users = static_cast<int>(cfg.users.size());

  auto& ledger = gw.ledger();
  int64_t step = period_length_step(cfg.granularity);
  for (const auto& user : cfg.users) {
    for (size_t w = 0; w < user.weeks.size(); ++w) {
      clock::Period period;
      if (cfg.granularity == clock::Granularity::month) {
        // Walk forward month by month from the start.
        int64_t probe = cfg.start + 1;
        period = clock::period_for(cfg.granularity, probe);
        for (size_t k = 0; k < w; ++k) {
          period = clock::period_for(cfg.granularity, period.end + 1);
        }
      } else {
        period = clock::period_for(cfg.granularity, cfg.start + w * step + 1);
      }

      std::mt19937_64 rng(mix_seed(cfg.seed, user.uname, w));
      std::uniform_int_distribution<int64_t> tc_dist(period.start + 1,
                                                     period.end);
      std::uniform_int_distribution<size_t> rname_dist(0, rnames.size() - 1);
      std::uniform_int_distribution<size_t> op_dist(
          0, std::size(ops) - 1);

      const auto& counts = user.weeks[w];
      std::vector<std::pair<int64_t, int>> events;
      events.reserve(counts.suc + counts.fail);
      for (long i = 0; i < counts.suc; ++i) {
        events.emplace_back(tc_dist(rng), 1);
      }
      for (long i = 0; i < counts.fail; ++i) {
        events.emplace_back(tc_dist(rng), 0);
      }
      std::stable_sort(events.begin(), events.end(),
                       [](const auto& a, const auto& b) {
                         return a.first < b.first;
                       });

      std::string key;
      for (const auto& [tc, flag] : events) {
        ledger.append(user.uname, rnames[rname_dist(rng)],
                      ops[op_dist(rng)], tc, flag, cfg.granularity);
      }
      // A week with zero events still needs its (empty) segment so the
      // window keeps its place.
      key = ledger.open_segment(user.uname, period.start + 1,
                                cfg.granularity);
      ledger.anchor(key);
      ++summary.segments;
      summary.records += counts.suc + counts.fail;
    }
  }
  ledger.save();
  return summary;
}

std::vector<TraceEvent> load_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    raise(ErrorCode::io_error, "cannot open trace: " + path);
  }
  std::vector<TraceEvent> trace;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
      TraceEvent ev;
      auto at = clock::parse_timestamp(j.at("at").get<std::string>());
      if (!at) {
        raise(ErrorCode::invalid_config,
              "bad at on trace line " + std::to_string(lineno));
      }
      ev.at = *at;
      ev.uname = j.at("uname").get<std::string>();
      ev.rname = j.at("rname").get<std::string>();
      auto op = model::parse_op(j.at("op").get<std::string>());
      if (!op) {
        raise(ErrorCode::invalid_config,
              "bad op on trace line " + std::to_string(lineno));
      }
      ev.op = *op;
      ev.ip = j.at("ip").get<std::string>();
      if (j.contains("expected")) {
        std::string verdict = j.at("expected").get<std::string>();
        if (verdict == "permit") {
          ev.expected = decision::Verdict::permit;
        } else if (verdict == "deny") {
          ev.expected = decision::Verdict::deny;
        } else {
          raise(ErrorCode::invalid_config,
                "expected must be permit|deny on line " +
                    std::to_string(lineno));
        }
      }
      trace.push_back(std::move(ev));
    } catch (const json::exception& e) {
      raise(ErrorCode::invalid_config,
            "trace line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  for (size_t i = 1; i < trace.size(); ++i) {
    if (trace[i].at < trace[i - 1].at) {
      raise(ErrorCode::invalid_config,
            "trace events are not ordered by at (line " +
                std::to_string(i + 1) + ")");
    }
  }
  return trace;
}

ReplayReport replay_trace(const std::vector<TraceEvent>& trace,
                          gateway::GatewayService& gw) {
  ReplayReport report;
  std::map<std::string, std::string> tokens;
  for (const auto& ev : trace) {
    ReplayRow row;
    row.event = ev;
    try {
      auto it = tokens.find(ev.uname);
      if (it == tokens.end()) {
        it = tokens.emplace(ev.uname, gw.mint_for_replay(ev.uname)).first;
      }
      decision::ResourceRequest req;
      req.uname = ev.uname;
      req.rname = ev.rname;
      req.oname = model::find_resource(gw.store(), ev.rname).oname;
      req.op = ev.op;
      req.ip = ev.ip;
      req.at = ev.at;
      auto outcome = gw.handle_access(req, it->second);
      row.verdict = decision::verdict_name(outcome.decision.verdict);
      row.reason = decision::reason_name(outcome.decision.reason);
      if (ev.expected.has_value()) {
        row.mismatch =
            (outcome.decision.verdict != *ev.expected);
      }
    } catch (const Error& e) {
      row.verdict = "deny";
      row.reason = error_code_name(e.code());
      if (ev.expected.has_value()) {
        row.mismatch = (*ev.expected != decision::Verdict::deny);
      }
    }
    if (row.mismatch) {
      ++report.mismatches;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

json ReplayReport::to_json() const {
  json rows_json = json::array();
  for (const auto& row : rows) {
    json jr{{"at", clock::format_timestamp(row.event.at)},
            {"uname", row.event.uname},
            {"rname", row.event.rname},
            {"op", model::op_label(row.event.op)},
            {"verdict", row.verdict},
            {"reason", row.reason},
            {"mismatch", row.mismatch}};
    if (row.event.expected.has_value()) {
      jr["expected"] = decision::verdict_name(*row.event.expected);
    }
    rows_json.push_back(std::move(jr));
  }
  return json{{"rows", std::move(rows_json)}, {"mismatches", mismatches}};
}

std::string ReplayReport::to_text() const {
  std::ostringstream out;
  out << "at                   user     resource op       verdict reason"
         "                expected  mismatch\n";
  for (const auto& row : rows) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "%-20s %-8s %-8s %-8s %-7s %-20s %-9s %s\n",
                  clock::format_timestamp(row.event.at).c_str(),
                  row.event.uname.c_str(), row.event.rname.c_str(),
                  model::op_label(row.event.op), row.verdict.c_str(),
                  row.reason.c_str(),
                  row.event.expected
                      ? decision::verdict_name(*row.event.expected)
                      : "-",
                  row.mismatch ? "MISMATCH" : "");
    out << buf;
  }
  out << "events: " << rows.size() << "  mismatches: " << mismatches << "\n";
  return out.str();
}

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ",";
    out += parts[i];
  }
  return out.empty() ? "-" : out;
}

}  // namespace

TrustReport trust_report(gateway::GatewayService& gw, int months) {
  TrustReport report;
  int window_n = gw.trust_engine().params().window_n;

  std::vector<std::string> unames;
  for (const auto& u : gw.store().users) {
    unames.push_back(u.uname);
  }
  std::sort(unames.begin(), unames.end());

  int64_t far_future = clock::civil_to_epoch(9999, 1, 1);
  gw.ledger().anchor_completed(far_future);

  if (months <= 0) {
    months = 0;
    for (const auto& uname : unames) {
      auto refs = gw.ledger().anchored_history(uname, far_future);
      int m = static_cast<int>(
          (refs.size() + window_n - 1) / static_cast<size_t>(window_n));
      months = std::max(months, m);
    }
  }

  for (const auto& uname : unames) {
    UserTrajectory traj;
    traj.uname = uname;
    traj.t_init = gw.trust_engine().initial_trust(uname);
    auto refs = gw.ledger().anchored_history(uname, far_future);

    for (int k = 0; k <= months; ++k) {
      MonthEntry entry;
      entry.month = k;
      if (k == 0 || refs.empty()) {
        entry.ts = traj.t_init;
      } else {
        size_t idx = std::min(static_cast<size_t>(k) * window_n, refs.size());
        int64_t at = refs[idx - 1].period_end;
        entry.ts = gw.trust_engine().evaluate_user(uname, at).ts;
      }
      for (const auto& [rname, threshold] : gw.store().reslist) {
        if (entry.ts >= threshold) {
          entry.permitted.push_back(rname);
        }
      }
      std::sort(entry.permitted.begin(), entry.permitted.end());
      traj.months.push_back(std::move(entry));
    }
    report.users.push_back(std::move(traj));
  }

  const auto& params = gw.trust_engine().params();
  std::ostringstream out;
  out << "Trust trajectory (alpha=" << params.alpha << ", beta=" << params.beta
      << ", window_n=" << params.window_n << ")\n\n";
  out << "user     t_init ";
  for (int k = 0; k <= months; ++k) {
    char h[32];
    std::snprintf(h, sizeof(h), " TS(m%d)", k);
    out << h;
  }
  out << "\n";
  for (const auto& traj : report.users) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%-8s %.3f ", traj.uname.c_str(),
                  traj.t_init);
    out << buf;
    for (const auto& entry : traj.months) {
      std::snprintf(buf, sizeof(buf), "  %.3f", entry.ts);
      out << buf;
    }
    out << "\n";
  }
  out << "\nPermitted resources by month\n\n";
  out << "user    ";
  for (int k = 0; k <= months; ++k) {
    char h[32];
    std::snprintf(h, sizeof(h), " m%-11d", k);
    out << h;
  }
  out << "\n";
  for (const auto& traj : report.users) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%-8s", traj.uname.c_str());
    out << buf;
    for (const auto& entry : traj.months) {
      std::snprintf(buf, sizeof(buf), " %-12s", join(entry.permitted).c_str());
      out << buf;
    }
    out << "\n";
  }
  report.text = out.str();
  return report;
}

json TrustReport::to_json() const {
  json users_json = json::array();
  for (const auto& traj : users) {
    json months_json = json::array();
    for (const auto& entry : traj.months) {
      months_json.push_back(json{{"month", entry.month},
                                 {"ts", entry.ts},
                                 {"permitted", entry.permitted}});
    }
    users_json.push_back(json{{"uname", traj.uname},
                              {"t_init", traj.t_init},
                              {"months", std::move(months_json)}});
  }
  return json{{"users", std::move(users_json)}};
}

UserTrustDetail user_trust_detail(gateway::GatewayService& gw,
                                  const std::string& uname) {
  UserTrustDetail detail;
  detail.uname = uname;
  int window_n = gw.trust_engine().params().window_n;

  int64_t far_future = clock::civil_to_epoch(9999, 1, 1);
  gw.ledger().anchor_completed(far_future);
  auto refs = gw.ledger().anchored_history(uname, far_future);
  if (refs.empty()) {
    raise(ErrorCode::no_history, "no anchored behavior for " + uname);
  }

  json periods = json::array();
  std::ostringstream out;
  out << "Trust detail for " << uname << "\n\n";
  out << "period  segment             x      y      ts_i    weight\n";

  size_t chunks =
      (refs.size() + window_n - 1) / static_cast<size_t>(window_n);
  for (size_t c = 0; c < chunks; ++c) {
    size_t end_idx = std::min((c + 1) * window_n, refs.size());
    int64_t at = refs[end_idx - 1].period_end;
    auto eval = gw.trust_engine().evaluate_detailed(uname, at);
    json segs = json::array();
    for (size_t i = 0; i < eval.window.size(); ++i) {
      const auto& d = eval.window[i];
      char buf[128];
      std::snprintf(buf, sizeof(buf), "%-7zu %-19s %-6ld %-6ld %.4f  %.3f\n",
                    c + 1, d.key.c_str(), d.x, d.y, d.ts, eval.weights[i]);
      out << buf;
      segs.push_back(json{{"segment_key", d.key},
                          {"x", d.x},
                          {"y", d.y},
                          {"ts", d.ts},
                          {"weight", eval.weights[i]}});
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "period %zu: t_init=%.4f  TS=%.4f\n\n", c + 1,
                  eval.score.t_init_used, eval.score.ts);
    out << buf;
    periods.push_back(json{{"period", c + 1},
                           {"t_init", eval.score.t_init_used},
                           {"ts", eval.score.ts},
                           {"segments", std::move(segs)}});
  }
  detail.body = json{{"uname", uname}, {"periods", std::move(periods)}};
  detail.text = out.str();
  return detail;
}

json UserTrustDetail::to_json() const { return body; }

}  // namespace tdacs::harness
