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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "common/error.hpp"
#include "oracle.hpp"
#include "proxy/proxy.hpp"
#include "support.hpp"

using namespace tdacs;
using tdacs::testing::behavior_table;
using tdacs::testing::make_store;

namespace {

struct Fixture {
  model::AttributeStore store = make_store();
  ledger::LedgerStore ledger;
  trust::TrustEngine engine{&store, &ledger, {}};
  proxy::BackendSimulator backend;
  proxy::ProxyService proxy{&store, &ledger, &engine, &backend,
                            clock::Granularity::week};

  int64_t start = tdacs::testing::scenario_start();

  void load(const char* uname, size_t week_count) {
    for (const auto& row : behavior_table()) {
      if (std::string(row.uname) != uname) continue;
      for (size_t w = 0; w < week_count; ++w) {
        int64_t base = start + static_cast<int64_t>(w) * 7 * 86400;
        long id = 0;
        for (long i = 0; i < row.weeks[w].first; ++i) {
          ledger.append(uname, "R1", model::Op::read, base + 600 + ++id, 1,
                        clock::Granularity::week);
        }
        for (long i = 0; i < row.weeks[w].second; ++i) {
          ledger.append(uname, "R1", model::Op::write, base + 600 + ++id, 0,
                        clock::Granularity::week);
        }
        ledger.anchor(ledger.open_segment(uname, base + 1,
                                          clock::Granularity::week));
      }
    }
  }
};

}  // namespace

TEST_CASE("assign_agent returns the configured agent, stably") {
  Fixture fx;
  auto s1 = fx.proxy.assign_agent("A", 1000);
  CHECK(s1.agent == "au_1");
  auto s2 = fx.proxy.assign_agent("A", 2000);
  CHECK(s2.agent == s1.agent);
  CHECK(s2.created_at == s1.created_at);

  try {
    fx.proxy.assign_agent("ghost", 0);
    FAIL("expected unknown_user");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unknown_user);
  }
}

TEST_CASE("authorize_by_trust denies below and grants at the threshold") {
  Fixture fx;
  fx.load("B", 4);  // month one: TS ~= 0.431
  int64_t now = fx.start + 4 * 7 * 86400 + 3600;

  auto denied = fx.proxy.authorize_by_trust("B", "R3", now);
  CHECK(denied.verdict == proxy::TrustVerdict::deny);
  CHECK(denied.reason == proxy::TrustDecision::Reason::low_trust);
  REQUIRE(denied.ts.has_value());
  CHECK(std::abs(*denied.ts - 0.431) < 0.002);
  CHECK(denied.threshold == doctest::Approx(0.5));

  // A user with no history scores the initial trust; 0.5 >= 0.5 grants.
  auto granted = fx.proxy.authorize_by_trust("A", "R3", now);
  CHECK(granted.verdict == proxy::TrustVerdict::grant);
  CHECK(*granted.ts == doctest::Approx(0.5));

  try {
    fx.proxy.authorize_by_trust("A", "R9", now);
    FAIL("expected unknown_resource");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unknown_resource);
  }
}

TEST_CASE("B after month two reaches only the lowest threshold") {
  Fixture fx;
  fx.load("B", 8);
  int64_t now = fx.start + 8 * 7 * 86400 + 3600;
  CHECK(fx.proxy.permitted_resources("B", now) ==
        std::set<std::string>{"R1"});

  for (const char* rname : {"R2", "R3", "R4"}) {
    auto d = fx.proxy.authorize_by_trust("B", rname, now);
    CHECK(d.verdict == proxy::TrustVerdict::deny);
  }
  auto d = fx.proxy.authorize_by_trust("B", "R1", now);
  CHECK(d.verdict == proxy::TrustVerdict::grant);
}

TEST_CASE("permitted_resources matches the trajectory table") {
  Fixture fx;
  fx.load("A", 8);
  fx.load("C", 8);
  int64_t m2 = fx.start + 8 * 7 * 86400 + 3600;
  CHECK(fx.proxy.permitted_resources("A", m2) ==
        std::set<std::string>{"R1", "R2", "R3"});
  CHECK(fx.proxy.permitted_resources("C", m2) ==
        std::set<std::string>{"R1", "R2"});

  // No thresholds are zero, so a zero-trust user gets nothing.
  Fixture zero;
  zero.store.users[0].t_init = 0.0;
  proxy::ProxyService p{&zero.store, &zero.ledger, &zero.engine,
                        &zero.backend, clock::Granularity::week};
  CHECK(p.permitted_resources("A", 1000).empty());
}

TEST_CASE("higher trust always holds a superset of resources") {
  Fixture fx;
  fx.load("A", 8);
  fx.load("B", 8);
  fx.load("C", 8);
  int64_t now = fx.start + 8 * 7 * 86400 + 3600;

  std::vector<std::pair<double, std::set<std::string>>> scored;
  for (const char* uname : {"A", "B", "C"}) {
    double ts = fx.engine.evaluate_user(uname, now).ts;
    scored.emplace_back(ts, fx.proxy.permitted_resources(uname, now));
  }
  for (const auto& [ts_a, perms_a] : scored) {
    for (const auto& [ts_b, perms_b] : scored) {
      if (ts_a >= ts_b) {
        CHECK(std::includes(perms_a.begin(), perms_a.end(), perms_b.begin(),
                            perms_b.end()));
      }
    }
  }
}

TEST_CASE("every trust decision appends exactly one behavior record") {
  Fixture fx;
  fx.load("A", 4);
  int64_t now = fx.start + 4 * 7 * 86400 + 3600;
  long before = fx.ledger.record_count();
  int decisions = 0;
  for (const char* rname : {"R1", "R2", "R3", "R4", "R1", "R4"}) {
    fx.proxy.authorize_by_trust("A", rname, now + decisions);
    ++decisions;
  }
  CHECK(fx.ledger.record_count() - before == decisions);
}

TEST_CASE("tampered history denies and records the failure") {
  Fixture fx;
  fx.load("A", 4);
  int64_t now = fx.start + 4 * 7 * 86400 + 3600;
  auto* seg = fx.ledger.mutable_segment("A/2020-W03");
  REQUIRE(seg != nullptr);
  seg->records[0].rname = "R9";

  long before = fx.ledger.record_count();
  auto d = fx.proxy.authorize_by_trust("A", "R1", now);
  CHECK(d.verdict == proxy::TrustVerdict::deny);
  CHECK(d.reason == proxy::TrustDecision::Reason::tampered_history);
  CHECK_FALSE(d.ts.has_value());
  CHECK(fx.ledger.record_count() - before == 1);

  CHECK(fx.proxy.permitted_resources("A", now).empty());
}

TEST_CASE("forward_request runs the backend under a grant") {
  Fixture fx;
  int64_t now = fx.start + 3600;
  auto session = fx.proxy.assign_agent("A", now);
  auto grant = fx.proxy.authorize_by_trust("A", "R1", now);
  REQUIRE(grant.verdict == proxy::TrustVerdict::grant);

  decision::ResourceRequest req;
  req.uname = "A";
  req.oname = "HDFS";
  req.rname = "R1";
  req.op = model::Op::read;
  req.at = now + 1;

  long before = fx.ledger.record_count();
  auto resp = fx.proxy.forward_request(req, session, grant, 4096);
  CHECK(resp.ok);
  CHECK(resp.payload_size == 4096);
  CHECK(fx.ledger.record_count() - before == 1);
}

TEST_CASE("a failing backend records the failure and raises") {
  Fixture fx;
  fx.backend.configure("HDFS", {.fail = true});
  int64_t now = fx.start + 3600;
  auto session = fx.proxy.assign_agent("A", now);
  auto grant = fx.proxy.authorize_by_trust("A", "R1", now);

  decision::ResourceRequest req;
  req.uname = "A";
  req.oname = "HDFS";
  req.rname = "R1";
  req.op = model::Op::read;
  req.at = now + 1;

  long before = fx.ledger.record_count();
  try {
    fx.proxy.forward_request(req, session, grant);
    FAIL("expected backend_unavailable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::backend_unavailable);
  }
  CHECK(fx.ledger.record_count() - before == 1);
}

TEST_CASE("forwarding without a matching grant is a caller bug") {
  Fixture fx;
  int64_t now = fx.start + 3600;
  auto session = fx.proxy.assign_agent("B", now);
  proxy::TrustDecision no_grant;
  no_grant.rname = "R1";

  decision::ResourceRequest req;
  req.uname = "B";
  req.rname = "R1";
  req.at = now;
  try {
    fx.proxy.forward_request(req, session, no_grant);
    FAIL("expected invalid_argument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_argument);
  }
}

TEST_CASE("resList reloads without restarting") {
  Fixture fx;
  int64_t now = fx.start + 3600;
  CHECK(fx.proxy.authorize_by_trust("A", "R3", now).verdict ==
        proxy::TrustVerdict::grant);  // threshold 0.5, t_init 0.5

  auto updated = fx.proxy.reslist();
  updated["R3"] = 0.9;
  fx.proxy.reload_reslist(updated);
  CHECK(fx.proxy.authorize_by_trust("A", "R3", now + 1).verdict ==
        proxy::TrustVerdict::deny);
}
