#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wss/record.hpp"

namespace wss {

// Drops duplicate-burst requests from one user's stream: for records with an
// identical (referrer, target) pair, only the first of a run is kept, where a
// run is chained by successive same-pair gaps <= window_ms. Records with
// differing pairs are never touched. Idempotent.
UserStream dedup_bursts(const UserStream& s, std::int64_t window_ms = 1000);

// Incremental form of dedup_bursts for one user. keep() decides record by
// record; stale pair state is evicted as time advances, so memory tracks the
// burst window rather than the stream.
class BurstDeduper {
public:
  explicit BurstDeduper(std::int64_t window_ms = 1000) : window_ms_(window_ms) {}

  // Records must arrive in non-decreasing timestamp order.
  bool keep(const ClickRecord& rec);

  std::size_t dropped() const { return dropped_; }

private:
  struct PairKey {
    Url referrer;  // empty host when the record is a jump
    Url target;

    bool operator==(const PairKey&) const = default;
  };
  struct PairKeyHash {
    std::size_t operator()(const PairKey& k) const noexcept {
      return UrlHash{}(k.referrer) * 1000003u ^ UrlHash{}(k.target);
    }
  };

  void evict_stale(std::int64_t now_ms);

  std::int64_t window_ms_;
  std::unordered_map<PairKey, std::int64_t, PairKeyHash> last_seen_;
  std::size_t dropped_ = 0;
  std::size_t since_evict_ = 0;
};

// Partitions records by user and sorts each stream by timestamp (stable, so
// same-ms records keep their input order). Streams come back sorted by user
// id for deterministic downstream output.
std::vector<UserStream> group_users(std::vector<ClickRecord> records);

// Low-activity filter used before distribution fitting: keeps streams with at
// least min_requests total requests AND at least min_jumps empty-referrer
// requests. Returns the surviving streams and the number removed.
struct FilterResult {
  std::vector<UserStream> streams;
  std::size_t removed = 0;
};
FilterResult filter_low_activity(std::vector<UserStream> streams,
                                 std::size_t min_requests = 2500,
                                 std::size_t min_jumps = 500);

}  // namespace wss
