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

#include "ledger/ledger.hpp"

#include <algorithm>
#include <fstream>

#include <nlohmann/json.hpp>

#include "common/crypto.hpp"
#include "common/error.hpp"

namespace tdacs::ledger {

using nlohmann::json;

std::string canonical_record_line(const BehaviorRecord& rec) {
  json line{{"RecordID", rec.record_id},
            {"Uname", rec.uname},
            {"Rname", rec.rname},
            {"OP", model::op_label(rec.op)},
            {"tc", clock::format_timestamp(rec.tc)},
            {"flag", rec.flag}};
  return line.dump();
}

std::string segment_digest(const BehaviorSegment& segment) {
  std::vector<std::pair<long, std::string>> lines;
  lines.reserve(segment.records.size());
  for (const auto& rec : segment.records) {
    lines.emplace_back(rec.record_id, canonical_record_line(rec));
  }
  // Ordered by record_id; duplicate ids (themselves a corruption) fall back
  // to content order so the digest stays deterministic.
  std::sort(lines.begin(), lines.end());
  std::string joined;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (i > 0) joined.push_back('\n');
    joined += lines[i].second;
  }
  return crypto::sha256_hex(joined);
}

void record_behavior(BehaviorSegment& segment, BehaviorRecord rec) {
  if (!segment.period.contains(rec.tc)) {
    raise(ErrorCode::out_of_period,
          "record tc " + clock::format_timestamp(rec.tc) +
              " outside segment period " + segment.segment_key);
  }
  if (!segment.uname.empty() && rec.uname != segment.uname) {
    raise(ErrorCode::invalid_argument,
          "record user " + rec.uname + " does not match segment " +
              segment.segment_key);
  }
  if (rec.record_id <= 0) {
    rec.record_id =
        segment.records.empty() ? 1 : segment.records.back().record_id + 1;
  }
  rec.block_hash.clear();
  rec.tx_hash.clear();
  rec.validation = false;
  segment.records.push_back(std::move(rec));
  segment.sealed = false;
  segment.digest.clear();
}

void seal_segment(BehaviorSegment& segment) {
  segment.digest = segment_digest(segment);
  segment.sealed = true;
}

std::string compute_block_hash(const AnchorBlock& block) {
  std::string preimage = std::to_string(block.index) + "|" +
                         std::to_string(block.timestamp) + "|" +
                         block.segment_key + "|" + block.hash_value + "|" +
                         block.prev_block_hash;
  return crypto::sha256_hex(preimage);
}

std::string compute_tx_hash(const std::string& segment_key,
                            const std::string& hash_value) {
  return crypto::sha256_hex(segment_key + "|" + hash_value);
}

AnchorBlock store_data(BehaviorSegment& segment,
                       std::vector<AnchorBlock>& chain, int64_t now) {
  if (!segment.sealed || segment.digest.empty()) {
    raise(ErrorCode::invalid_state,
          "segment must be sealed before anchoring: " + segment.segment_key);
  }
  for (const auto& block : chain) {
    if (block.segment_key == segment.segment_key) {
      raise(ErrorCode::duplicate_segment_key,
            "segment already anchored: " + segment.segment_key);
    }
  }
  AnchorBlock block;
  block.index = static_cast<long>(chain.size());
  block.timestamp = now;
  block.segment_key = segment.segment_key;
  block.hash_value = segment.digest;
  block.prev_block_hash = chain.empty() ? kZeroHash : chain.back().block_hash;
  block.block_hash = compute_block_hash(block);
  block.tx_hash = compute_tx_hash(block.segment_key, block.hash_value);
  chain.push_back(block);

  for (auto& rec : segment.records) {
    rec.block_hash = block.block_hash;
    rec.tx_hash = block.tx_hash;
  }
  return block;
}

std::string query_data(const std::string& segment_key,
                       const std::vector<AnchorBlock>& chain) {
  for (const auto& block : chain) {
    if (block.segment_key == segment_key) {
      return block.hash_value;
    }
  }
  raise(ErrorCode::not_anchored, "segment not anchored: " + segment_key);
}

bool validate_segment(BehaviorSegment& segment,
                      const std::vector<AnchorBlock>& chain) {
  const AnchorBlock* anchor = nullptr;
  for (const auto& block : chain) {
    if (block.segment_key == segment.segment_key) {
      anchor = &block;
      break;
    }
  }
  if (anchor == nullptr) {
    raise(ErrorCode::not_anchored,
          "segment not anchored: " + segment.segment_key);
  }
  bool ok = segment_digest(segment) == anchor->hash_value;
  // The anchor metadata written into each record at store time is part of
  // what an auditor checks; a mutated Blockhash/TxHash is tampering too.
  for (const auto& rec : segment.records) {
    if (rec.block_hash != anchor->block_hash ||
        rec.tx_hash != anchor->tx_hash) {
      ok = false;
      break;
    }
  }
  for (auto& rec : segment.records) {
    rec.validation = ok;
  }
  return ok;
}

bool verify_chain(const std::vector<AnchorBlock>& chain) {
  std::string prev = kZeroHash;
  for (size_t i = 0; i < chain.size(); ++i) {
    const AnchorBlock& block = chain[i];
    if (block.index != static_cast<long>(i)) return false;
    if (block.prev_block_hash != prev) return false;
    if (block.block_hash != compute_block_hash(block)) return false;
    if (block.tx_hash != compute_tx_hash(block.segment_key, block.hash_value))
      return false;
    prev = block.block_hash;
  }
  return true;
}

// ---------------------------------------------------------------------------
// LedgerStore

namespace {

json block_to_json(const AnchorBlock& b) {
  return json{{"index", b.index},
              {"timestamp", b.timestamp},
              {"segment_key", b.segment_key},
              {"hash_value", b.hash_value},
              {"prev_block_hash", b.prev_block_hash},
              {"block_hash", b.block_hash},
              {"tx_hash", b.tx_hash}};
}

AnchorBlock block_from_json(const json& j) {
  AnchorBlock b;
  b.index = j.at("index").get<long>();
  b.timestamp = j.at("timestamp").get<int64_t>();
  b.segment_key = j.at("segment_key").get<std::string>();
  b.hash_value = j.at("hash_value").get<std::string>();
  b.prev_block_hash = j.at("prev_block_hash").get<std::string>();
  b.block_hash = j.at("block_hash").get<std::string>();
  b.tx_hash = j.at("tx_hash").get<std::string>();
  return b;
}

// Off-chain record lines carry exactly the columns of a behavioral record.
json record_to_json(const BehaviorRecord& r) {
  return json{{"RecordID", r.record_id},
              {"Uname", r.uname},
              {"Rname", r.rname},
              {"OP", model::op_label(r.op)},
              {"tc", clock::format_timestamp(r.tc)},
              {"flag", r.flag},
              {"Blockhash", r.block_hash},
              {"TxHash", r.tx_hash},
              {"Validation", r.validation}};
}

BehaviorRecord record_from_json(const json& j) {
  BehaviorRecord r;
  r.record_id = j.at("RecordID").get<long>();
  r.uname = j.at("Uname").get<std::string>();
  r.rname = j.at("Rname").get<std::string>();
  auto op = model::parse_op(j.at("OP").get<std::string>());
  if (!op) {
    raise(ErrorCode::io_error, "bad OP in record file: " + j.dump());
  }
  r.op = *op;
  auto tc = clock::parse_timestamp(j.at("tc").get<std::string>());
  if (!tc) {
    raise(ErrorCode::io_error, "bad tc in record file: " + j.dump());
  }
  r.tc = *tc;
  r.flag = j.at("flag").get<int>();
  r.block_hash = j.at("Blockhash").get<std::string>();
  r.tx_hash = j.at("TxHash").get<std::string>();
  r.validation = j.at("Validation").get<bool>();
  return r;
}

}  // namespace

void LedgerStore::open(const std::filesystem::path& dir) {
  std::lock_guard lock(mu_);
  dir_ = dir;
  std::filesystem::create_directories(dir_ / "offchain");
  load();
}

void LedgerStore::load() {
  segments_.clear();
  chain_.clear();
  next_record_id_ = 1;

  auto chain_path = dir_ / "chain.jsonl";
  if (std::filesystem::exists(chain_path)) {
    std::ifstream in(chain_path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      chain_.push_back(block_from_json(json::parse(line)));
    }
  }

  auto index_path = dir_ / "offchain" / "segments.json";
  if (!std::filesystem::exists(index_path)) {
    return;
  }
  json index;
  std::ifstream in(index_path);
  in >> index;
  next_record_id_ = index.value("next_record_id", 1L);
  for (const auto& js : index.value("segments", json::array())) {
    BehaviorSegment seg;
    seg.segment_key = js.at("segment_key").get<std::string>();
    seg.uname = js.at("uname").get<std::string>();
    seg.period.start = js.at("start").get<int64_t>();
    seg.period.end = js.at("end").get<int64_t>();
    seg.period.label = js.at("label").get<std::string>();
    seg.digest = js.value("digest", "");
    seg.sealed = js.value("sealed", false);
    segments_[seg.segment_key] = std::move(seg);
  }

  // Records live in one file per user; route each line to its segment by
  // (Uname, tc).
  for (const auto& entry :
       std::filesystem::directory_iterator(dir_ / "offchain")) {
    if (entry.path().extension() != ".jsonl") continue;
    std::ifstream rin(entry.path());
    std::string line;
    while (std::getline(rin, line)) {
      if (line.empty()) continue;
      BehaviorRecord rec = record_from_json(json::parse(line));
      for (auto& [key, seg] : segments_) {
        if (seg.uname == rec.uname && seg.period.contains(rec.tc)) {
          seg.records.push_back(rec);
          break;
        }
      }
    }
  }
  for (auto& [key, seg] : segments_) {
    std::sort(seg.records.begin(), seg.records.end(),
              [](const auto& a, const auto& b) {
                return a.record_id < b.record_id;
              });
  }
}

void LedgerStore::save() const {
  std::lock_guard lock(mu_);
  if (dir_.empty()) {
    return;
  }
  std::filesystem::create_directories(dir_ / "offchain");

  {
    std::ofstream out(dir_ / "chain.jsonl", std::ios::trunc);
    for (const auto& block : chain_) {
      out << block_to_json(block).dump() << '\n';
    }
  }

  json index;
  index["next_record_id"] = next_record_id_;
  json segs = json::array();
  std::map<std::string, std::ofstream> user_files;
  // Remove record files for users whose segments were all purged.
  std::vector<std::filesystem::path> stale;
  for (const auto& entry :
       std::filesystem::directory_iterator(dir_ / "offchain")) {
    if (entry.path().extension() == ".jsonl") {
      stale.push_back(entry.path());
    }
  }
  for (const auto& path : stale) {
    std::filesystem::remove(path);
  }
  for (const auto& [key, seg] : segments_) {
    segs.push_back(json{{"segment_key", seg.segment_key},
                        {"uname", seg.uname},
                        {"start", seg.period.start},
                        {"end", seg.period.end},
                        {"label", seg.period.label},
                        {"digest", seg.digest},
                        {"sealed", seg.sealed}});
    auto& out = user_files[seg.uname];
    if (!out.is_open()) {
      out.open(dir_ / "offchain" / (seg.uname + ".jsonl"), std::ios::trunc);
    }
    for (const auto& rec : seg.records) {
      out << record_to_json(rec).dump() << '\n';
    }
  }
  index["segments"] = std::move(segs);
  std::ofstream iout(dir_ / "offchain" / "segments.json", std::ios::trunc);
  iout << index.dump(2) << '\n';
}

std::string LedgerStore::open_segment(const std::string& uname, int64_t tc,
                                      clock::Granularity granularity) {
  std::lock_guard lock(mu_);
  clock::Period period = clock::period_for(granularity, tc);
  std::string key = uname + "/" + period.label;
  auto it = segments_.find(key);
  if (it != segments_.end()) {
    return key;
  }
  if (anchored_locked(key)) {
    raise(ErrorCode::invalid_state,
          "segment was anchored and purged, cannot reopen: " + key);
  }
  for (const auto& [k, seg] : segments_) {
    if (seg.uname == uname && seg.period.start < period.end &&
        period.start < seg.period.end) {
      raise(ErrorCode::invalid_state,
            "segment period overlaps existing segment " + k);
    }
  }
  BehaviorSegment seg;
  seg.segment_key = key;
  seg.uname = uname;
  seg.period = period;
  segments_[key] = std::move(seg);
  return key;
}

long LedgerStore::append(const std::string& uname, const std::string& rname,
                         model::Op op, int64_t tc, int flag,
                         clock::Granularity granularity) {
  std::string key = open_segment(uname, tc, granularity);
  std::lock_guard lock(mu_);
  BehaviorSegment& seg = segments_.at(key);
  if (anchored_locked(key)) {
    raise(ErrorCode::invalid_state,
          "segment already anchored, record rejected: " + key);
  }
  BehaviorRecord rec;
  rec.record_id = next_record_id_++;
  rec.uname = uname;
  rec.rname = rname;
  rec.op = op;
  rec.tc = tc;
  rec.flag = flag;
  record_behavior(seg, std::move(rec));
  return seg.records.back().record_id;
}

bool LedgerStore::anchored_locked(const std::string& segment_key) const {
  for (const auto& block : chain_) {
    if (block.segment_key == segment_key) {
      return true;
    }
  }
  return false;
}

long LedgerStore::append_observed(const std::string& uname,
                                  const std::string& rname, model::Op op,
                                  int64_t tc, int flag,
                                  clock::Granularity granularity) {
  try {
    return append(uname, rname, op, tc, flag, granularity);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::invalid_state) {
      throw;
    }
  }
  // The event-time period is sealed; stamp the record just past the last
  // anchored period of this user.
  int64_t frontier = tc;
  {
    std::lock_guard lock(mu_);
    for (const auto& block : chain_) {
      if (block.segment_key.rfind(uname + "/", 0) != 0) continue;
      auto it = segments_.find(block.segment_key);
      int64_t end =
          it != segments_.end() ? it->second.period.end : block.timestamp;
      frontier = std::max(frontier, end);
    }
  }
  return append(uname, rname, op, frontier + 1, flag, granularity);
}

AnchorBlock LedgerStore::anchor(const std::string& segment_key,
                                std::optional<int64_t> at) {
  std::lock_guard lock(mu_);
  auto it = segments_.find(segment_key);
  if (it == segments_.end()) {
    raise(ErrorCode::unknown_resource, "no such segment: " + segment_key);
  }
  seal_segment(it->second);
  return store_data(it->second, chain_, at.value_or(it->second.period.end));
}

std::vector<std::string> LedgerStore::anchor_completed(int64_t now) {
  std::vector<std::string> keys;
  {
    std::lock_guard lock(mu_);
    for (const auto& [key, seg] : segments_) {
      // Strictly elapsed: a record stamped exactly at the boundary still
      // belongs to the (start, end] period and must find it open.
      if (seg.period.end < now && !anchored_locked(key)) {
        keys.push_back(key);
      }
    }
  }
  for (const auto& key : keys) {
    anchor(key);
  }
  return keys;
}

std::string LedgerStore::query(const std::string& segment_key) const {
  std::lock_guard lock(mu_);
  return query_data(segment_key, chain_);
}

bool LedgerStore::validate(const std::string& segment_key) {
  std::lock_guard lock(mu_);
  auto it = segments_.find(segment_key);
  if (it == segments_.end()) {
    raise(ErrorCode::not_anchored,
          "no off-chain data for segment: " + segment_key);
  }
  return validate_segment(it->second, chain_);
}

bool LedgerStore::chain_ok() const {
  std::lock_guard lock(mu_);
  return verify_chain(chain_);
}

std::vector<std::string> LedgerStore::purge_expired(int window_n,
                                                    int64_t now) {
  std::lock_guard lock(mu_);
  std::map<std::string, std::vector<const BehaviorSegment*>> by_user;
  for (const auto& [key, seg] : segments_) {
    if (seg.period.start < now) {
      by_user[seg.uname].push_back(&seg);
    }
  }
  std::vector<std::string> purged;
  for (auto& [uname, segs] : by_user) {
    if (static_cast<int>(segs.size()) <= window_n) {
      continue;
    }
    std::sort(segs.begin(), segs.end(), [](const auto* a, const auto* b) {
      return a->period.start > b->period.start;
    });
    for (size_t i = window_n; i < segs.size(); ++i) {
      purged.push_back(segs[i]->segment_key);
    }
  }
  for (const auto& key : purged) {
    segments_.erase(key);
  }
  return purged;
}

const BehaviorSegment* LedgerStore::find_segment(
    const std::string& segment_key) const {
  std::lock_guard lock(mu_);
  auto it = segments_.find(segment_key);
  return it == segments_.end() ? nullptr : &it->second;
}

BehaviorSegment* LedgerStore::mutable_segment(const std::string& segment_key) {
  std::lock_guard lock(mu_);
  auto it = segments_.find(segment_key);
  return it == segments_.end() ? nullptr : &it->second;
}

std::vector<AnchoredSegmentRef> LedgerStore::anchored_history(
    const std::string& uname, int64_t up_to) const {
  std::lock_guard lock(mu_);
  std::vector<AnchoredSegmentRef> refs;
  for (const auto& block : chain_) {
    AnchoredSegmentRef ref;
    ref.key = block.segment_key;
    auto it = segments_.find(block.segment_key);
    if (it != segments_.end()) {
      if (it->second.uname != uname) continue;
      ref.present = true;
      ref.period_start = it->second.period.start;
      ref.period_end = it->second.period.end;
    } else {
      // Purged off-chain; the anchor remains.  Segment keys embed the user
      // and anchor timestamps default to the period end.
      if (block.segment_key.rfind(uname + "/", 0) != 0) continue;
      ref.present = false;
      ref.period_start = block.timestamp;
      ref.period_end = block.timestamp;
    }
    if (ref.period_end <= up_to) {
      refs.push_back(std::move(ref));
    }
  }
  std::sort(refs.begin(), refs.end(), [](const auto& a, const auto& b) {
    return a.period_start < b.period_start;
  });
  return refs;
}

std::vector<std::string> LedgerStore::all_segment_keys() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> keys;
  keys.reserve(segments_.size());
  for (const auto& [key, seg] : segments_) {
    keys.push_back(key);
  }
  return keys;
}

long LedgerStore::record_count() const {
  std::lock_guard lock(mu_);
  long n = 0;
  for (const auto& [key, seg] : segments_) {
    n += static_cast<long>(seg.records.size());
  }
  return n;
}

}  // namespace tdacs::ledger
