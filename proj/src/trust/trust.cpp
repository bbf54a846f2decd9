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

#include "trust/trust.hpp"

#include <cmath>

#include "common/error.hpp"

namespace tdacs::trust {

std::vector<double> weight_vector(int n, WeightScheme scheme) {
  if (n < 1) {
    raise(ErrorCode::invalid_argument, "weight vector needs n >= 1");
  }
  std::vector<double> w(n);
  if (scheme == WeightScheme::ramp) {
    double denom = static_cast<double>(n) * (n + 1);
    for (int i = 1; i <= n; ++i) {
      w[i - 1] = 2.0 * i / denom;
    }
  } else {
    double denom = 0.0;
    for (int i = 1; i <= n; ++i) {
      denom += 1.0 / (n - i + 1);
    }
    for (int i = 1; i <= n; ++i) {
      w[i - 1] = 1.0 / ((n - i + 1) * denom);
    }
  }
  return w;
}

double segment_trust(const SegmentStats& stats, double beta) {
  if (stats.x == 0 && stats.y == 0) {
    return 0.5;  // neutral prior for an empty segment
  }
  double x = static_cast<double>(stats.x);
  double y = static_cast<double>(stats.y);
  double z = (x - beta * y) / (x + y);
  return 1.0 / (1.0 + std::exp(-z));
}

SegmentStats stats_from_segment(const ledger::BehaviorSegment& segment) {
  SegmentStats stats;
  for (const auto& rec : segment.records) {
    if (rec.flag == 1) {
      ++stats.x;
    } else {
      ++stats.y;
    }
  }
  return stats;
}

double comprehensive_trust(double t_init, double alpha,
                           std::span<const double> weights,
                           std::span<const double> ts_list) {
  if (weights.size() != ts_list.size()) {
    raise(ErrorCode::length_mismatch,
          "weights and segment scores differ in length");
  }
  double acc = 0.0;
  for (size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i] * ts_list[i];
  }
  return alpha * t_init + (1.0 - alpha) * acc;
}

std::vector<double> SlidingWindow::weights() const {
  return segments.empty() ? std::vector<double>{}
                          : weight_vector(static_cast<int>(segments.size()));
}

SlidingWindow slide(SlidingWindow window, const std::string& new_segment) {
  if (static_cast<int>(window.segments.size()) >= window.capacity &&
      !window.segments.empty()) {
    window.segments.erase(window.segments.begin());
  }
  window.segments.push_back(new_segment);
  return window;
}

double TrustEngine::initial_trust(const std::string& uname) const {
  const model::UserAttr* user = store_->find_user(uname);
  if (user == nullptr) {
    raise(ErrorCode::unknown_user, "unknown user: " + uname);
  }
  return user->t_init;
}

double TrustEngine::chunk_score(
    const std::string& uname,
    const std::vector<ledger::AnchoredSegmentRef>& refs, size_t begin,
    size_t end, double t_init, std::vector<SegmentDetail>* details) {
  std::vector<double> ts_list;
  ts_list.reserve(end - begin);
  for (size_t i = begin; i < end; ++i) {
    const auto& ref = refs[i];
    if (!ref.present) {
      raise(ErrorCode::invalid_state,
            "off-chain history for " + ref.key +
                " was purged before its period was scored");
    }
    if (!ledger_->validate(ref.key)) {
      raise(ErrorCode::tampered_history,
            "segment failed on-chain validation: " + ref.key);
    }
    const ledger::BehaviorSegment* seg = ledger_->find_segment(ref.key);
    SegmentStats stats = stats_from_segment(*seg);
    double ts = segment_trust(stats, params_.beta);
    ts_list.push_back(ts);
    if (details != nullptr) {
      details->push_back({ref.key, stats.x, stats.y, ts});
    }
  }
  std::vector<double> w =
      weight_vector(static_cast<int>(ts_list.size()), params_.scheme);
  return comprehensive_trust(t_init, params_.alpha, w, ts_list);
}

Evaluation TrustEngine::evaluate_detailed(const std::string& uname,
                                          int64_t now) {
  auto refs = ledger_->anchored_history(uname, now);
  if (refs.empty()) {
    raise(ErrorCode::no_history, "no anchored behavior for " + uname);
  }

  size_t n = static_cast<size_t>(params_.window_n);
  size_t m = refs.size();
  size_t complete_chunks = (m - 1) / n;  // full periods before the window
  size_t window_begin = complete_chunks * n;

  double t_init = initial_trust(uname);
  double t = t_init;
  for (size_t c = 0; c < complete_chunks; ++c) {
    bool chunk_present = true;
    for (size_t i = c * n; i < (c + 1) * n; ++i) {
      if (!refs[i].present) {
        chunk_present = false;
        break;
      }
    }
    if (chunk_present) {
      t = chunk_score(uname, refs, c * n, (c + 1) * n, t, nullptr);
      std::lock_guard lock(mu_);
      auto& cache = chunk_ts_[uname];
      if (cache.size() <= c) cache.resize(c + 1);
      cache[c] = t;
    } else {
      std::lock_guard lock(mu_);
      auto it = chunk_ts_.find(uname);
      if (it == chunk_ts_.end() || it->second.size() <= c) {
        raise(ErrorCode::invalid_state,
              "purged evaluation period " + std::to_string(c + 1) + " of " +
                  uname + " was never scored; cascade broken");
      }
      t = it->second[c];
    }
  }

  Evaluation eval;
  eval.score.uname = uname;
  eval.score.t_init_used = t;
  eval.score.ts =
      chunk_score(uname, refs, window_begin, m, t, &eval.window);
  for (const auto& d : eval.window) {
    eval.score.ts_segments.push_back(d.ts);
  }
  eval.weights =
      weight_vector(static_cast<int>(eval.window.size()), params_.scheme);
  return eval;
}

TrustScore TrustEngine::evaluate_user(const std::string& uname, int64_t now) {
  return evaluate_detailed(uname, now).score;
}

}  // namespace tdacs::trust
