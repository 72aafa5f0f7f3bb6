#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "wss/record.hpp"

namespace wss {

struct TreeNode {
  Url url;
  std::int32_t parent = -1;  // index into SessionTree::nodes, -1 for the root
  std::uint32_t depth = 1;   // root has depth 1
  std::int64_t added_ts = 0;
  // Number of records that targeted this URL within the session. 0 only for
  // a root synthesized from an unseen referrer.
  std::uint32_t request_count = 0;
};

// A logical session: a tree of URLs connected by observed referrer->target
// links. nodes[0] is the root; nodes appear in attachment order.
struct SessionTree {
  std::uint32_t id = 0;  // unique per user, in creation order
  std::string user;
  std::int64_t created_ts = 0;
  std::int64_t last_attach_ts = 0;
  std::vector<TreeNode> nodes;

  const TreeNode& root() const { return nodes.front(); }
};

struct SessionMetrics {
  std::size_t node_count = 0;
  std::size_t request_count = 0;
  std::size_t depth = 0;
  double node_depth_ratio = 0.0;  // node_count / depth; 1 iff the tree is a chain
  std::int64_t duration_ms = 0;   // last_attach_ts - created_ts
};

SessionMetrics tree_metrics(const SessionTree& t);

// Whether a tree is more than a single node.
inline bool is_nontrivial(const SessionTree& t) { return t.nodes.size() >= 2; }

// Incremental logical sessionizer for one user.
//
// Each record with referrer r and target u is routed by the session map
// N : URL -> session ("the most recent use of the referring URL"):
//   (a) empty referrer: new session rooted at u;
//   (b) N(r) defined:   attach u under r in N(r) if u is not already a node
//       there, bump u's request count, set N(u) = N(r);
//   (c) N(r) undefined: new session with synthesized root r and leaf u.
//
// With a positive timeout, case (b) additionally requires that r's node was
// added within timeout_ms of the record; otherwise the record falls through
// to case (c). Re-requesting a node does not refresh its attachment clock.
class LogicalSessionizer {
public:
  explicit LogicalSessionizer(std::string user, std::int64_t timeout_ms = 0)
      : user_(std::move(user)), timeout_ms_(timeout_ms) {}

  // Feeds the next record (non-decreasing timestamps); returns the id of the
  // session the record was assigned to.
  std::uint32_t add(const ClickRecord& rec);

  const std::vector<SessionTree>& trees() const { return trees_; }
  std::vector<SessionTree> take_trees() { return std::move(trees_); }
  std::size_t records_seen() const { return records_seen_; }

private:
  struct NodeRef {
    std::uint32_t session = 0;
    std::uint32_t node = 0;
  };
  struct UrlState {
    NodeRef current;             // N(url), plus the url's node in that session
    std::vector<NodeRef> older;  // sessions this url joined before the current one
  };

  std::uint32_t new_root_session(const Url& root, std::int64_t ts, bool synthesized_root);
  void set_current(const Url& url, NodeRef ref);
  // The url's node in `session`, or nullptr if it never joined that session.
  const NodeRef* membership(const UrlState& st, std::uint32_t session) const;

  std::string user_;
  std::int64_t timeout_ms_;
  std::vector<SessionTree> trees_;
  std::unordered_map<Url, UrlState, UrlHash> url_state_;
  std::size_t records_seen_ = 0;
};

// Per-record session assignment plus the finished trees, in creation order.
struct LogicalResult {
  std::vector<SessionTree> trees;
  std::vector<std::uint32_t> assignment;  // record index -> session id

  std::size_t total_requests() const { return assignment.size(); }
};

// Runs the referrer-tree algorithm over one sorted stream.
LogicalResult logical_sessions(const UserStream& s);

// Timeout variant: a record may only attach to a node added within
// timeout_ms. With timeout_ms greater than the stream's span the result is
// identical to logical_sessions. Throws ArgumentError for timeout_ms <= 0.
LogicalResult logical_sessions_timeout(const UserStream& s, std::int64_t timeout_ms);

// A contiguous run of records treated as one session by the purely temporal
// mechanisms (inactivity timeout, rolling average).
struct RecordGroup {
  std::uint32_t id = 0;
  std::size_t first_index = 0;  // index into the source stream
  std::size_t request_count = 0;
  std::int64_t created_ts = 0;
  std::int64_t duration_ms = 0;
  std::size_t distinct_hosts = 0;
};

// Splits on inactivity: a new group starts where the gap between consecutive
// records strictly exceeds timeout_ms. Throws ArgumentError for
// timeout_ms <= 0.
std::vector<RecordGroup> timeout_sessions(const UserStream& s, std::int64_t timeout_ms);

// Splits where the trailing click count drops below threshold: record i
// starts a new group iff fewer than threshold records precede it within
// window_ms (gap <= window counts). threshold 1 reproduces timeout_sessions
// with timeout_ms = window_ms. Throws ArgumentError for non-positive
// parameters.
std::vector<RecordGroup> rolling_avg_sessions(const UserStream& s, std::int64_t window_ms,
                                              double threshold);

// JSON Lines emission. Summaries carry {user, id, mechanism, created_ts,
// duration_ms, node_count, request_count, depth, ratio, root_host}; the full
// node list is included when with_nodes is set.
std::string session_jsonl(const SessionTree& t, std::string_view mechanism,
                          bool with_nodes = false);
std::string group_jsonl(const RecordGroup& g, std::string_view user, std::string_view mechanism);

}  // namespace wss
