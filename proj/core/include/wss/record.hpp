#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wss/url.hpp"

namespace wss {

// One logged HTTP GET. An absent referrer is the "jump" indicator: the user
// went somewhere directly instead of following a link.
struct ClickRecord {
  std::int64_t ts_ms = 0;
  std::string user;
  Url target;
  std::optional<Url> referrer;
  bool is_browser = true;

  bool is_jump() const { return !referrer.has_value(); }
};

// One user's requests, sorted by timestamp (ties keep input order).
struct UserStream {
  std::string user;
  std::vector<ClickRecord> records;

  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }

  // last ts - first ts; 0 for streams of one record.
  std::int64_t span_ms() const {
    return records.empty() ? 0 : records.back().ts_ms - records.front().ts_ms;
  }
};

}  // namespace wss
