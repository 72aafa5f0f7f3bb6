#include "wss/clicklog.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>

#include "wss/errors.hpp"

namespace wss {

namespace {

constexpr int kFieldCount = 5;

void append_url(std::string& out, const Url& u) {
  out += "http://";
  out += u.host;
  out += u.path;
}

}  // namespace

ClickRecord parse_line(std::string_view line, std::size_t line_no) {
  std::array<std::string_view, kFieldCount> fields;
  std::size_t n_fields = 0;
  std::size_t pos = 0;
  while (true) {
    const std::size_t tab = line.find('\t', pos);
    const std::string_view field =
        tab == std::string_view::npos ? line.substr(pos) : line.substr(pos, tab - pos);
    if (n_fields == kFieldCount) {
      throw ParseError("expected 5 tab-separated fields, got more", line_no);
    }
    fields[n_fields++] = field;
    if (tab == std::string_view::npos) break;
    pos = tab + 1;
  }
  if (n_fields != kFieldCount) {
    throw ParseError("expected 5 tab-separated fields, got " + std::to_string(n_fields), line_no);
  }

  ClickRecord rec;

  const std::string_view ts = fields[0];
  const auto [ptr, ec] = std::from_chars(ts.data(), ts.data() + ts.size(), rec.ts_ms);
  if (ec != std::errc{} || ptr != ts.data() + ts.size()) {
    throw ParseError("bad timestamp '" + std::string(ts) + "'", line_no);
  }
  if (rec.ts_ms < 0) throw ParseError("negative timestamp", line_no);

  if (fields[1].empty()) throw ParseError("empty user id", line_no);
  rec.user.assign(fields[1]);

  try {
    rec.target = normalize_url(fields[2]);
    if (fields[3] != "-") rec.referrer = normalize_url(fields[3]);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line_no);
  }

  if (fields[4] == "1") {
    rec.is_browser = true;
  } else if (fields[4] == "0") {
    rec.is_browser = false;
  } else {
    throw ParseError("browser flag must be '0' or '1', got '" + std::string(fields[4]) + "'",
                     line_no);
  }
  return rec;
}

std::string format_line(const ClickRecord& rec) {
  std::string out;
  out.reserve(48 + rec.user.size() + rec.target.host.size() + rec.target.path.size());
  out += std::to_string(rec.ts_ms);
  out += '\t';
  out += rec.user;
  out += '\t';
  append_url(out, rec.target);
  out += '\t';
  if (rec.referrer) {
    append_url(out, *rec.referrer);
  } else {
    out += '-';
  }
  out += '\t';
  out += rec.is_browser ? '1' : '0';
  return out;
}

std::optional<ClickRecord> ClickLogReader::next() {
  while (std::getline(in_, buf_)) {
    ++lines_read_;
    if (!buf_.empty() && buf_.back() == '\r') buf_.pop_back();
    if (buf_.empty() || buf_[0] == '#') continue;
    try {
      ClickRecord rec = parse_line(buf_, lines_read_);
      ++records_read_;
      return rec;
    } catch (const ParseError&) {
      if (strict_) throw;
      ++malformed_skipped_;
    }
  }
  return std::nullopt;
}

void ClickLogWriter::write(const ClickRecord& rec) {
  out_ << format_line(rec) << '\n';
  ++records_written_;
}

}  // namespace wss
