#include "wss/session.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_set>

#include "wss/errors.hpp"

namespace wss {

SessionMetrics tree_metrics(const SessionTree& t) {
  SessionMetrics m;
  m.node_count = t.nodes.size();
  for (const TreeNode& n : t.nodes) {
    m.request_count += n.request_count;
    m.depth = std::max<std::size_t>(m.depth, n.depth);
  }
  m.node_depth_ratio = m.depth ? static_cast<double>(m.node_count) / static_cast<double>(m.depth) : 0.0;
  m.duration_ms = t.last_attach_ts - t.created_ts;
  return m;
}

std::uint32_t LogicalSessionizer::new_root_session(const Url& root, std::int64_t ts,
                                                   bool synthesized_root) {
  const auto id = static_cast<std::uint32_t>(trees_.size());
  SessionTree t;
  t.id = id;
  t.user = user_;
  t.created_ts = ts;
  t.last_attach_ts = ts;
  t.nodes.push_back(TreeNode{root, -1, 1, ts, synthesized_root ? 0u : 1u});
  trees_.push_back(std::move(t));
  set_current(root, NodeRef{id, 0});
  return id;
}

void LogicalSessionizer::set_current(const Url& url, NodeRef ref) {
  auto [it, inserted] = url_state_.try_emplace(url, UrlState{ref, {}});
  if (inserted) return;
  UrlState& st = it->second;
  if (st.current.session == ref.session) {
    st.current = ref;
    return;
  }
  // Moving N(url) to another session: remember the old membership, and drop
  // ref's session from the history if it is re-entering.
  std::erase_if(st.older, [&](const NodeRef& r) { return r.session == ref.session; });
  st.older.push_back(st.current);
  st.current = ref;
}

const LogicalSessionizer::NodeRef* LogicalSessionizer::membership(const UrlState& st,
                                                                  std::uint32_t session) const {
  if (st.current.session == session) return &st.current;
  for (const NodeRef& r : st.older) {
    if (r.session == session) return &r;
  }
  return nullptr;
}

std::uint32_t LogicalSessionizer::add(const ClickRecord& rec) {
  ++records_seen_;

  // Case (a): a jump starts a fresh session rooted at the target.
  if (!rec.referrer) return new_root_session(rec.target, rec.ts_ms, false);

  const Url& referrer = *rec.referrer;
  if (const auto it = url_state_.find(referrer); it != url_state_.end()) {
    const NodeRef at = it->second.current;
    SessionTree& tree = trees_[at.session];
    const bool fresh_enough =
        timeout_ms_ <= 0 || rec.ts_ms - tree.nodes[at.node].added_ts <= timeout_ms_;
    if (fresh_enough) {
      // Case (b): attach the target under the referrer if necessary.
      const auto tgt = url_state_.find(rec.target);
      const NodeRef* existing =
          tgt == url_state_.end() ? nullptr : membership(tgt->second, at.session);
      if (existing) {
        tree.nodes[existing->node].request_count += 1;
        set_current(rec.target, *existing);
      } else {
        const auto node_idx = static_cast<std::uint32_t>(tree.nodes.size());
        tree.nodes.push_back(TreeNode{rec.target, static_cast<std::int32_t>(at.node),
                                      tree.nodes[at.node].depth + 1, rec.ts_ms, 1});
        tree.last_attach_ts = rec.ts_ms;
        set_current(rec.target, NodeRef{at.session, node_idx});
      }
      return at.session;
    }
  }

  // Case (c): unseen (or timed-out) referrer becomes a synthesized root.
  if (referrer == rec.target) {
    // Degenerate self-link: the single node is both root and the request.
    return new_root_session(rec.target, rec.ts_ms, false);
  }
  const std::uint32_t id = new_root_session(referrer, rec.ts_ms, true);
  SessionTree& tree = trees_[id];
  tree.nodes.push_back(TreeNode{rec.target, 0, 2, rec.ts_ms, 1});
  set_current(rec.target, NodeRef{id, 1});
  return id;
}

namespace {

LogicalResult run_logical(const UserStream& s, std::int64_t timeout_ms) {
  LogicalSessionizer sess(s.user, timeout_ms);
  LogicalResult result;
  result.assignment.reserve(s.records.size());
  for (const ClickRecord& rec : s.records) {
    result.assignment.push_back(sess.add(rec));
  }
  result.trees = sess.take_trees();
  return result;
}

}  // namespace

LogicalResult logical_sessions(const UserStream& s) { return run_logical(s, 0); }

LogicalResult logical_sessions_timeout(const UserStream& s, std::int64_t timeout_ms) {
  if (timeout_ms <= 0) throw ArgumentError("timeout_ms must be positive");
  return run_logical(s, timeout_ms);
}

namespace {

RecordGroup finish_group(const UserStream& s, std::uint32_t id, std::size_t first,
                         std::size_t end) {
  RecordGroup g;
  g.id = id;
  g.first_index = first;
  g.request_count = end - first;
  g.created_ts = s.records[first].ts_ms;
  g.duration_ms = s.records[end - 1].ts_ms - s.records[first].ts_ms;
  std::unordered_set<std::string_view> hosts;
  for (std::size_t i = first; i < end; ++i) {
    hosts.insert(s.records[i].target.host);
  }
  g.distinct_hosts = hosts.size();
  return g;
}

}  // namespace

std::vector<RecordGroup> timeout_sessions(const UserStream& s, std::int64_t timeout_ms) {
  if (timeout_ms <= 0) throw ArgumentError("timeout_ms must be positive");
  std::vector<RecordGroup> groups;
  if (s.records.empty()) return groups;
  std::size_t first = 0;
  for (std::size_t i = 1; i <= s.records.size(); ++i) {
    const bool split =
        i == s.records.size() || s.records[i].ts_ms - s.records[i - 1].ts_ms > timeout_ms;
    if (split) {
      groups.push_back(finish_group(s, static_cast<std::uint32_t>(groups.size()), first, i));
      first = i;
    }
  }
  return groups;
}

std::vector<RecordGroup> rolling_avg_sessions(const UserStream& s, std::int64_t window_ms,
                                              double threshold) {
  if (window_ms <= 0) throw ArgumentError("window_ms must be positive");
  if (!(threshold > 0)) throw ArgumentError("threshold must be positive");
  std::vector<RecordGroup> groups;
  if (s.records.empty()) return groups;
  std::size_t first = 0;
  std::size_t left = 0;  // first record still inside the trailing window
  for (std::size_t i = 1; i <= s.records.size(); ++i) {
    bool split = i == s.records.size();
    if (!split) {
      while (s.records[i].ts_ms - s.records[left].ts_ms > window_ms) ++left;
      split = static_cast<double>(i - left) < threshold;
    }
    if (split) {
      groups.push_back(finish_group(s, static_cast<std::uint32_t>(groups.size()), first, i));
      first = i;
    }
  }
  return groups;
}

namespace {

void append_json_string(std::string& out, std::string_view s) {
  out += '"';
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void append_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  out += buf;
}

}  // namespace

std::string session_jsonl(const SessionTree& t, std::string_view mechanism, bool with_nodes) {
  const SessionMetrics m = tree_metrics(t);
  std::string out = "{\"user\":";
  append_json_string(out, t.user);
  out += ",\"id\":" + std::to_string(t.id);
  out += ",\"mechanism\":";
  append_json_string(out, mechanism);
  out += ",\"created_ts\":" + std::to_string(t.created_ts);
  out += ",\"duration_ms\":" + std::to_string(m.duration_ms);
  out += ",\"node_count\":" + std::to_string(m.node_count);
  out += ",\"request_count\":" + std::to_string(m.request_count);
  out += ",\"depth\":" + std::to_string(m.depth);
  out += ",\"ratio\":";
  append_double(out, m.node_depth_ratio);
  out += ",\"root_host\":";
  append_json_string(out, t.root().url.host);
  if (with_nodes) {
    out += ",\"nodes\":[";
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
      const TreeNode& n = t.nodes[i];
      if (i) out += ',';
      out += "{\"url\":";
      append_json_string(out, "http://" + n.url.host + n.url.path);
      out += ",\"parent\":";
      if (n.parent < 0) {
        out += "null";
      } else {
        const TreeNode& p = t.nodes[static_cast<std::size_t>(n.parent)];
        append_json_string(out, "http://" + p.url.host + p.url.path);
      }
      out += ",\"depth\":" + std::to_string(n.depth);
      out += ",\"added_ts\":" + std::to_string(n.added_ts);
      out += ",\"request_count\":" + std::to_string(n.request_count);
      out += '}';
    }
    out += ']';
  }
  out += '}';
  return out;
}

std::string group_jsonl(const RecordGroup& g, std::string_view user, std::string_view mechanism) {
  std::string out = "{\"user\":";
  append_json_string(out, user);
  out += ",\"id\":" + std::to_string(g.id);
  out += ",\"mechanism\":";
  append_json_string(out, mechanism);
  out += ",\"created_ts\":" + std::to_string(g.created_ts);
  out += ",\"duration_ms\":" + std::to_string(g.duration_ms);
  out += ",\"request_count\":" + std::to_string(g.request_count);
  out += ",\"host_count\":" + std::to_string(g.distinct_hosts);
  out += '}';
  return out;
}

}  // namespace wss
