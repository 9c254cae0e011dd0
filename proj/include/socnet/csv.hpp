#pragma once

#include <string>
#include <string_view>

namespace socnet::csv {

/// RFC 4180 field: always quoted, embedded quotes doubled.
inline std::string quoted(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace socnet::csv
