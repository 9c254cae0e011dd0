#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace socnet {

/// One search result as returned for a query.
struct Snippet {
  std::string text;
  std::string url;
  std::string domain;  // registrable domain, lowercase
  std::size_t rank = 0;

  friend bool operator==(const Snippet&, const Snippet&) = default;
};

/// Public suffixes with two labels that need three labels to identify a site.
inline bool is_multi_part_suffix(std::string_view suffix) {
  static constexpr std::array<std::string_view, 24> kSuffixes = {
      "co.uk", "org.uk", "ac.uk", "gov.uk", "me.uk",  "ltd.uk", "com.au", "net.au",
      "org.au", "edu.au", "gov.au", "co.jp", "ne.jp", "or.jp",  "co.nz",  "org.nz",
      "com.br", "com.cn", "com.mx", "co.in", "co.za", "com.tr", "com.sg", "co.kr"};
  return std::find(kSuffixes.begin(), kSuffixes.end(), suffix) != kSuffixes.end();
}

/// Host part of a URL, lowercase, without credentials or port.
inline std::string url_host(std::string_view url) {
  if (const auto scheme = url.find("://"); scheme != std::string_view::npos) {
    url.remove_prefix(scheme + 3);
  }
  url = url.substr(0, url.find_first_of("/?#"));
  if (const auto at = url.rfind('@'); at != std::string_view::npos) url.remove_prefix(at + 1);
  if (!url.empty() && url.front() == '[') {
    url = url.substr(0, url.find(']') + 1);
  } else if (const auto colon = url.find(':'); colon != std::string_view::npos) {
    url = url.substr(0, colon);
  }
  std::string host{url};
  std::transform(host.begin(), host.end(), host.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  while (!host.empty() && host.back() == '.') host.pop_back();
  return host;
}

/// Last two labels of the host (three for known multi-part suffixes). IP
/// literals are returned whole.
inline std::string registrable_domain(std::string_view url) {
  const std::string host = url_host(url);
  if (host.empty()) return host;
  const bool numeric = std::all_of(host.begin(), host.end(), [](unsigned char c) {
    return std::isdigit(c) || c == '.';
  });
  if (numeric || host.front() == '[') return host;
  std::vector<std::size_t> dots;
  for (std::size_t i = 0; i < host.size(); ++i) {
    if (host[i] == '.') dots.push_back(i);
  }
  if (dots.size() < 2) return host;
  const std::string last_two = host.substr(dots[dots.size() - 2] + 1);
  if (is_multi_part_suffix(last_two)) {
    return dots.size() < 3 ? host : host.substr(dots[dots.size() - 3] + 1);
  }
  return last_two;
}

/// Escapes tab, newline, carriage return and backslash for a record field.
inline std::string escape_field(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

class CorpusParseError : public std::runtime_error {
 public:
  CorpusParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

inline std::string unescape_field(std::string_view s, std::size_t line_number) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out.push_back(s[i]);
      continue;
    }
    if (i + 1 == s.size()) throw CorpusParseError("dangling escape", line_number);
    switch (s[++i]) {
      case '\\': out.push_back('\\'); break;
      case 't': out.push_back('\t'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      default: throw CorpusParseError(std::string("unknown escape \\") + s[i], line_number);
    }
  }
  return out;
}

/// "url<TAB>domain<TAB>text" with escaped fields.
inline std::string format_record(const Snippet& s) {
  return escape_field(s.url) + '\t' + escape_field(s.domain) + '\t' + escape_field(s.text);
}

inline Snippet parse_record(std::string_view line, std::size_t line_number) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto first = line.find('\t');
  const auto second = first == std::string_view::npos ? first : line.find('\t', first + 1);
  if (second == std::string_view::npos) {
    throw CorpusParseError("expected three tab-separated fields (url, domain, text)", line_number);
  }
  if (line.find('\t', second + 1) != std::string_view::npos) {
    throw CorpusParseError("too many fields", line_number);
  }
  Snippet s;
  s.url = unescape_field(line.substr(0, first), line_number);
  s.domain = unescape_field(line.substr(first + 1, second - first - 1), line_number);
  s.text = unescape_field(line.substr(second + 1), line_number);
  if (s.url.empty()) throw CorpusParseError("empty url", line_number);
  if (s.domain.empty()) s.domain = registrable_domain(s.url);
  std::transform(s.domain.begin(), s.domain.end(), s.domain.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s.domain.empty()) throw CorpusParseError("cannot determine domain", line_number);
  return s;
}

/// Reads records until end of stream; blank lines are skipped. Line numbers
/// in errors are 1-based and counted from `first_line`.
inline std::vector<Snippet> read_records(std::istream& in, std::size_t first_line = 1) {
  std::vector<Snippet> out;
  std::string line;
  for (std::size_t n = first_line; std::getline(in, line); ++n) {
    if (line.empty() || line == "\r") continue;
    out.push_back(parse_record(line, n));
  }
  return out;
}

inline void write_records(std::ostream& out, const std::vector<Snippet>& snippets) {
  for (const auto& s : snippets) out << format_record(s) << '\n';
}

}  // namespace socnet
