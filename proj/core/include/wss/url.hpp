#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>

namespace wss {

// A normalized URL: lowercase host plus a path that starts with "/" and
// carries no query string or fragment. Two Urls are equal iff host and
// path are byte-equal.
struct Url {
  std::string host;
  std::string path = "/";

  bool operator==(const Url&) const = default;
  auto operator<=>(const Url&) const = default;
};

struct UrlHash {
  std::size_t operator()(const Url& u) const noexcept;
};

// Normalizes an absolute http(s) URL or a scheme-less host/path string:
// scheme stripped, host lowercased, query and fragment removed, path
// defaulting to "/". Throws ParseError when no host is present or the
// host contains whitespace.
Url normalize_url(std::string_view raw);

// Page-request heuristic on the final path segment: directories, extensionless
// segments, and a fixed table of dynamic/markup extensions count as pages;
// everything else (images, media, scripts, stylesheets, ...) does not.
bool is_page_request(const Url& u);

}  // namespace wss
