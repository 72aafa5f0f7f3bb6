#include "wss/ingest.hpp"

#include <algorithm>

namespace wss {

bool BurstDeduper::keep(const ClickRecord& rec) {
  PairKey key{rec.referrer.value_or(Url{}), rec.target};
  auto [it, inserted] = last_seen_.try_emplace(std::move(key), rec.ts_ms);
  if (inserted) {
    if (++since_evict_ >= 4096) evict_stale(rec.ts_ms);
    return true;
  }
  // Same pair seen before: the run continues while successive gaps stay
  // within the window, and the run's timestamp always advances.
  const bool in_run = rec.ts_ms - it->second <= window_ms_;
  it->second = rec.ts_ms;
  if (in_run) {
    ++dropped_;
    return false;
  }
  return true;
}

void BurstDeduper::evict_stale(std::int64_t now_ms) {
  since_evict_ = 0;
  for (auto it = last_seen_.begin(); it != last_seen_.end();) {
    if (now_ms - it->second > window_ms_) {
      it = last_seen_.erase(it);
    } else {
      ++it;
    }
  }
}

UserStream dedup_bursts(const UserStream& s, std::int64_t window_ms) {
  BurstDeduper dedup(window_ms);
  UserStream out;
  out.user = s.user;
  out.records.reserve(s.records.size());
  for (const ClickRecord& rec : s.records) {
    if (dedup.keep(rec)) out.records.push_back(rec);
  }
  return out;
}

std::vector<UserStream> group_users(std::vector<ClickRecord> records) {
  std::unordered_map<std::string, std::size_t> index;
  std::vector<UserStream> streams;
  for (ClickRecord& rec : records) {
    auto [it, inserted] = index.try_emplace(rec.user, streams.size());
    if (inserted) {
      streams.push_back(UserStream{rec.user, {}});
    }
    streams[it->second].records.push_back(std::move(rec));
  }
  for (UserStream& s : streams) {
    std::stable_sort(s.records.begin(), s.records.end(),
                     [](const ClickRecord& a, const ClickRecord& b) { return a.ts_ms < b.ts_ms; });
  }
  std::sort(streams.begin(), streams.end(),
            [](const UserStream& a, const UserStream& b) { return a.user < b.user; });
  return streams;
}

FilterResult filter_low_activity(std::vector<UserStream> streams, std::size_t min_requests,
                                 std::size_t min_jumps) {
  FilterResult result;
  result.streams.reserve(streams.size());
  for (UserStream& s : streams) {
    std::size_t jumps = 0;
    for (const ClickRecord& rec : s.records) {
      if (rec.is_jump()) ++jumps;
    }
    if (s.records.size() >= min_requests && jumps >= min_jumps) {
      result.streams.push_back(std::move(s));
    } else {
      ++result.removed;
    }
  }
  return result;
}

}  // namespace wss
