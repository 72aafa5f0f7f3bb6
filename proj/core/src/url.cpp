#include "wss/url.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "wss/errors.hpp"

namespace wss {

namespace {

bool scheme_prefix_length(std::string_view raw, std::size_t& len) {
  // [A-Za-z][A-Za-z0-9+.-]*://
  if (raw.empty() || !std::isalpha(static_cast<unsigned char>(raw[0]))) return false;
  std::size_t i = 1;
  while (i < raw.size()) {
    const char c = raw[i];
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '.' || c == '-') {
      ++i;
      continue;
    }
    break;
  }
  if (raw.compare(i, 3, "://") == 0) {
    len = i + 3;
    return true;
  }
  return false;
}

void lowercase_ascii(std::string& s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
}

}  // namespace

std::size_t UrlHash::operator()(const Url& u) const noexcept {
  // FNV-1a over host, a separator byte, then path. The separator keeps
  // {"ab","/c"} and {"a","b/c"} from colliding trivially.
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::string_view s) {
    for (const char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
  };
  mix(u.host);
  h ^= 0xff;
  h *= 1099511628211ull;
  mix(u.path);
  return h;
}

Url normalize_url(std::string_view raw) {
  std::size_t scheme_len = 0;
  if (scheme_prefix_length(raw, scheme_len)) raw.remove_prefix(scheme_len);

  const std::size_t host_end = raw.find_first_of("/?#");
  std::string_view host_part = raw.substr(0, host_end);
  std::string_view rest = host_end == std::string_view::npos ? std::string_view{} : raw.substr(host_end);

  if (host_part.empty()) throw ParseError("URL has empty host: '" + std::string(raw) + "'");
  for (const char c : host_part) {
    if (std::isspace(static_cast<unsigned char>(c)) || static_cast<unsigned char>(c) < 0x20) {
      throw ParseError("URL host contains whitespace: '" + std::string(raw) + "'");
    }
  }

  Url u;
  u.host.assign(host_part);
  lowercase_ascii(u.host);

  if (rest.empty() || rest[0] != '/') {
    // Query or fragment directly after the host, or nothing at all.
    u.path = "/";
  } else {
    const std::size_t cut = rest.find_first_of("?#");
    u.path.assign(rest.substr(0, cut));
  }
  return u;
}

bool is_page_request(const Url& u) {
  const std::size_t slash = u.path.rfind('/');
  std::string_view last = std::string_view(u.path).substr(slash + 1);
  if (last.empty()) return true;  // directory request

  const std::size_t dot = last.rfind('.');
  if (dot == std::string_view::npos) return true;  // no extension

  std::string ext(last.substr(dot + 1));
  lowercase_ascii(ext);

  static constexpr std::array page_exts = {
      "html", "htm", "shtml", "php", "php3", "asp", "aspx", "jsp",
      "jspx", "cfm", "cgi", "pl", "py", "do", "action",
  };
  return std::find(page_exts.begin(), page_exts.end(), ext) != page_exts.end();
}

}  // namespace wss
