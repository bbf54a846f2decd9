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

// Behavior provenance: off-chain record segments plus an append-only chain
// of anchor blocks holding each segment's digest.  Anchors are never
// removed, even when the off-chain data is purged.

#ifndef TDACS_LEDGER_LEDGER_HPP
#define TDACS_LEDGER_LEDGER_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "common/clock.hpp"
#include "model/model.hpp"

namespace tdacs::ledger {

constexpr const char* kZeroHash =
    "0000000000000000000000000000000000000000000000000000000000000000";

struct BehaviorRecord {
  long record_id = 0;
  std::string uname;
  std::string rname;
  model::Op op = model::Op::read;
  int64_t tc = 0;
  int flag = 1;  // 1 success, 0 failure
  std::string block_hash;
  std::string tx_hash;
  bool validation = false;
};

struct BehaviorSegment {
  std::string segment_key;
  std::string uname;  // empty = unscoped (accepts any user)
  clock::Period period;
  std::vector<BehaviorRecord> records;
  std::string digest;  // set by seal_segment
  bool sealed = false;
};

struct AnchorBlock {
  long index = 0;
  int64_t timestamp = 0;
  std::string segment_key;
  std::string hash_value;
  std::string prev_block_hash;
  std::string block_hash;
  std::string tx_hash;
};

struct AnchoredSegmentRef {
  std::string key;
  bool present = false;  // off-chain records still available
  int64_t period_start = 0;
  int64_t period_end = 0;
};

// Canonical bytes of one record: the content fields only (RecordID, Uname,
// Rname, OP, tc, flag).  Chain metadata stays out so anchoring does not
// change the digest.
std::string canonical_record_line(const BehaviorRecord& rec);

// SHA-256 over the records sorted by record_id, one canonical line each,
// joined by newline.  Invariant under permutation of in-memory order.
std::string segment_digest(const BehaviorSegment& segment);

// Appends with the next record_id (when rec.record_id <= 0) and marks the
// digest stale.  Raises out_of_period when tc is outside (start, end] and
// invalid_argument on a user mismatch for scoped segments.
void record_behavior(BehaviorSegment& segment, BehaviorRecord rec);

void seal_segment(BehaviorSegment& segment);

// Appends an anchor block for a sealed segment and back-fills each record's
// Blockhash/TxHash.  Raises duplicate_segment_key and invalid_state (when
// unsealed).
AnchorBlock store_data(BehaviorSegment& segment, std::vector<AnchorBlock>& chain,
                       int64_t now);

// Returns the anchored hash_value; raises not_anchored.
std::string query_data(const std::string& segment_key,
                       const std::vector<AnchorBlock>& chain);

// Recomputes the digest over the current off-chain records and compares it
// (and each record's anchor metadata) against the chain; stamps every
// record's Validation field with the outcome.  Raises not_anchored.
bool validate_segment(BehaviorSegment& segment,
                      const std::vector<AnchorBlock>& chain);

// Every block hash recomputes and every prev link matches.
bool verify_chain(const std::vector<AnchorBlock>& chain);

std::string compute_block_hash(const AnchorBlock& block);
std::string compute_tx_hash(const std::string& segment_key,
                            const std::string& hash_value);

// Persistent store: per-user off-chain record files, a segment index and
// the chain file.  All writes serialize through one internal mutex.
class LedgerStore {
 public:
  LedgerStore() = default;

  // Binds the store to a directory and loads any existing state.
  void open(const std::filesystem::path& dir);
  void save() const;

  bool persistent() const { return !dir_.empty(); }

  // Finds or creates the segment for (uname, period of tc).  Periods of one
  // user never overlap.
  std::string open_segment(const std::string& uname, int64_t tc,
                           clock::Granularity granularity);

  // Appends one behavior record, assigning a store-wide record id.
  // Creates the enclosing segment on demand.  Raises invalid_state when the
  // target segment is already anchored.
  long append(const std::string& uname, const std::string& rname, model::Op op,
              int64_t tc, int flag, clock::Granularity granularity);

  // Like append, but an outcome whose event time falls in an already
  // anchored (sealed, immutable) period is re-stamped at the user's open
  // frontier instead of being lost.
  long append_observed(const std::string& uname, const std::string& rname,
                       model::Op op, int64_t tc, int flag,
                       clock::Granularity granularity);

  // Seals + anchors; anchor timestamps default to the period end.
  AnchorBlock anchor(const std::string& segment_key,
                     std::optional<int64_t> at = std::nullopt);

  // Anchors every segment whose period has fully elapsed.
  std::vector<std::string> anchor_completed(int64_t now);

  std::string query(const std::string& segment_key) const;
  bool validate(const std::string& segment_key);
  bool chain_ok() const;

  // Drops off-chain segments older than the window_n most recent periods of
  // each user; anchors stay.  Returns the purged segment keys.
  std::vector<std::string> purge_expired(int window_n, int64_t now);

  const BehaviorSegment* find_segment(const std::string& segment_key) const;
  // Mutable access for administration and tamper experiments.
  BehaviorSegment* mutable_segment(const std::string& segment_key);

  // One entry per anchored segment of the user with period end <= up_to,
  // ordered by period start.  Purged segments stay listed (present=false)
  // because their anchors remain on the chain.
  std::vector<AnchoredSegmentRef> anchored_history(const std::string& uname,
                                                   int64_t up_to) const;

  std::vector<std::string> all_segment_keys() const;
  const std::vector<AnchorBlock>& chain() const { return chain_; }
  long record_count() const;

 private:
  void load();
  bool anchored_locked(const std::string& segment_key) const;

  std::filesystem::path dir_;
  mutable std::mutex mu_;
  std::map<std::string, BehaviorSegment> segments_;
  std::vector<AnchorBlock> chain_;
  long next_record_id_ = 1;
};

}  // namespace tdacs::ledger

#endif  // TDACS_LEDGER_LEDGER_HPP
