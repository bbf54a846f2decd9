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

// Sliding-window trust evaluation.
//
// Per-segment trust is a scaled sigmoid over success/failure counts
//     ts = 1 / (1 + exp(-(x - beta*y) / (x + y)))
// which rises slowly with successes (plateau 1/(1+e^-1) ~= 0.731) and
// collapses quickly with failures.  The comprehensive score folds the
// window's weighted segment scores into the initial trust:
//     TS = alpha * T_init + (1 - alpha) * sum_i w_i * ts_i
// with "far small, near large" weights.  T_init cascades: evaluation
// period k >= 2 starts from the TS of period k-1.

#ifndef TDACS_TRUST_TRUST_HPP
#define TDACS_TRUST_TRUST_HPP

#include <cstdint>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "ledger/ledger.hpp"
#include "model/model.hpp"

namespace tdacs::trust {

struct SegmentStats {
  long x = 0;  // successful accesses (flag = 1)
  long y = 0;  // failed accesses (flag = 0)
};

// How positional weights fall off with age.  The ramp is what the worked
// numbers use; inverse makes w_i proportional to 1/age in periods.
enum class WeightScheme { ramp, inverse };

struct TrustParams {
  double beta = 10.0;   // failure penalty, > 1
  double alpha = 0.5;   // weight of the initial trust, in [0,1]
  int window_n = 4;     // segments per evaluation window
  WeightScheme scheme = WeightScheme::ramp;
};

// Positional weights for a window of n segments, oldest -> newest.  Both
// schemes sum to 1 and strictly increase: the ramp is w_i = 2i / (n(n+1)),
// the inverse is w_i proportional to 1/(n-i+1).  Raises invalid_argument
// for n < 1.
std::vector<double> weight_vector(int n,
                                  WeightScheme scheme = WeightScheme::ramp);

// An empty segment scores the neutral 0.5 rather than evaluating 0/0.
double segment_trust(const SegmentStats& stats, double beta);

SegmentStats stats_from_segment(const ledger::BehaviorSegment& segment);

// Raises length_mismatch when the vectors disagree.
double comprehensive_trust(double t_init, double alpha,
                           std::span<const double> weights,
                           std::span<const double> ts_list);

// Window of the most recent segment keys, oldest first.  Weights are
// positional and re-derived from the current length.
struct SlidingWindow {
  int capacity = 4;
  std::vector<std::string> segments;

  std::vector<double> weights() const;
};

// Appends as most-recent; evicts the oldest when full.
SlidingWindow slide(SlidingWindow window, const std::string& new_segment);

struct TrustScore {
  std::string uname;
  std::vector<double> ts_segments;  // current window, oldest -> newest
  double ts = 0.0;                  // comprehensive TS
  double t_init_used = 0.0;         // cascaded initial value fed into TS
};

struct SegmentDetail {
  std::string key;
  long x = 0;
  long y = 0;
  double ts = 0.0;
};

struct Evaluation {
  TrustScore score;
  std::vector<SegmentDetail> window;
  std::vector<double> weights;
};

// Evaluates users against a ledger.  The anchored history is processed in
// consecutive evaluation periods of window_n segments; every complete prior
// period folds into the initial trust of the next (the cascade), and the
// last, possibly partial, period is the current window.  Every segment
// consulted must pass on-chain validation.
class TrustEngine {
 public:
  TrustEngine(const model::AttributeStore* store, ledger::LedgerStore* ledger,
              TrustParams params)
      : store_(store), ledger_(ledger), params_(params) {}

  const TrustParams& params() const { return params_; }

  // Config-assigned initial trust; raises unknown_user.
  double initial_trust(const std::string& uname) const;

  // Raises no_history (no anchored segment up to `now`) and
  // tampered_history (any windowed segment fails validation).
  TrustScore evaluate_user(const std::string& uname, int64_t now);

  Evaluation evaluate_detailed(const std::string& uname, int64_t now);

 private:
  double chunk_score(const std::string& uname,
                     const std::vector<ledger::AnchoredSegmentRef>& refs,
                     size_t begin, size_t end, double t_init,
                     std::vector<SegmentDetail>* details);

  const model::AttributeStore* store_;
  ledger::LedgerStore* ledger_;
  TrustParams params_;

  // TS of completed evaluation periods, kept so the cascade survives the
  // purge of old off-chain segments.
  mutable std::mutex mu_;
  std::map<std::string, std::vector<double>> chunk_ts_;
};

}  // namespace tdacs::trust

#endif  // TDACS_TRUST_TRUST_HPP
