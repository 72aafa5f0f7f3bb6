#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "wss/record.hpp"

namespace wss {

// Click Log v1: UTF-8 text, one record per line, five tab-separated fields:
//
//   ts_ms <TAB> user_id <TAB> target_url <TAB> referrer_url-or-"-" <TAB> browser_flag
//
// ts_ms is a non-negative decimal integer, browser_flag is "0" or "1", and
// lines starting with "#" are comments. URLs are normalized on read.

// Decodes one record line. Throws ParseError (carrying line_no) on a bad
// field count, non-integer timestamp, empty user, unparsable URL, or a
// browser flag other than "0"/"1".
ClickRecord parse_line(std::string_view line, std::size_t line_no = 0);

// Encodes a record as one Click Log v1 line (no trailing newline). URLs are
// written back in absolute form, absent referrers as "-".
std::string format_line(const ClickRecord& rec);

// Streaming reader. Skips blank and comment lines; malformed lines are
// skipped and counted unless strict mode is on, in which case they throw.
class ClickLogReader {
public:
  explicit ClickLogReader(std::istream& in, bool strict = false)
      : in_(in), strict_(strict) {}

  // Next record, or nullopt at end of input.
  std::optional<ClickRecord> next();

  std::size_t lines_read() const { return lines_read_; }
  std::size_t records_read() const { return records_read_; }
  std::size_t malformed_skipped() const { return malformed_skipped_; }

private:
  std::istream& in_;
  bool strict_;
  std::string buf_;
  std::size_t lines_read_ = 0;
  std::size_t records_read_ = 0;
  std::size_t malformed_skipped_ = 0;
};

class ClickLogWriter {
public:
  explicit ClickLogWriter(std::ostream& out) : out_(out) {}

  void write(const ClickRecord& rec);
  std::size_t records_written() const { return records_written_; }

private:
  std::ostream& out_;
  std::size_t records_written_ = 0;
};

}  // namespace wss
