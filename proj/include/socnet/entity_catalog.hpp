#pragma once

#include "socnet/unicode_text.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <istream>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace socnet {

/// A person known to the catalog, identified by its canonical spelling.
struct Entity {
  std::string name;

  friend auto operator<=>(const Entity&, const Entity&) = default;
};

struct EntityMatch {
  Entity entity;
  std::size_t begin = 0;  // byte offsets into the searched text
  std::size_t end = 0;

  friend bool operator==(const EntityMatch&, const EntityMatch&) = default;
};

class CatalogLoadError : public std::runtime_error {
 public:
  CatalogLoadError(const std::string& what, std::size_t byte_offset)
      : std::runtime_error(what), byte_offset_(byte_offset) {}

  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

/// Immutable-after-load dictionary of person names. Lookups go through the
/// normalized form, so "barack  OBAMA" resolves to "Barack Obama".
class EntityCatalog {
 public:
  /// Adds a name; returns false for blank names and normalized duplicates.
  bool add(std::string_view name) {
    const std::string key = text::normalize(name);
    if (key.empty()) return false;
    if (index_.contains(key)) return false;
    std::string canonical = trim(name);
    index_.emplace(key, names_.size());
    names_.push_back(std::move(canonical));
    first_words_.insert(leading_word(key));
    max_length_ = std::max(max_length_, text::count_code_points(key));
    return true;
  }

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<Entity> lookup(std::string_view any_form) const {
    return lookup_normalized(text::normalize(any_form));
  }

  std::optional<Entity> lookup_normalized(const std::string& key) const {
    const auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return Entity{names_[it->second]};
  }

  bool contains(const Entity& e) const {
    const auto found = lookup(e.name);
    return found && found->name == e.name;
  }

  /// Non-overlapping, token-bounded catalog mentions, left to right, taking
  /// the longest name at each start position.
  std::vector<EntityMatch> find(std::string_view text) const {
    std::vector<EntityMatch> matches;
    if (names_.empty() || text.empty()) return matches;
    const text::FoldedText folded = text::fold(text);
    const std::size_t n = folded.size();
    const auto word_at = [&](std::size_t i) { return text::is_word_char(folded.cps[i]); };
    const bool any_start = first_words_.contains(std::string{});

    std::size_t i = 0;
    std::string key;
    std::string first_word;
    while (i < n) {
      if (folded.cps[i] == U' ' || (i > 0 && word_at(i - 1))) {
        ++i;
        continue;
      }
      if (!any_start) {
        first_word.clear();
        for (std::size_t j = i; j < n && word_at(j); ++j) text::append_utf8(first_word, folded.cps[j]);
        if (!first_words_.contains(first_word)) {
          ++i;
          continue;
        }
      }
      key.clear();
      std::optional<EntityMatch> best;
      std::size_t best_end = i;
      const std::size_t limit = std::min(n, i + max_length_);
      for (std::size_t j = i; j < limit; ++j) {
        text::append_utf8(key, folded.cps[j]);
        if (folded.cps[j] == U' ') continue;
        const bool at_boundary = j + 1 == n || (!word_at(j + 1) && folded.begin[j + 1] != folded.begin[j]);
        if (!at_boundary) continue;
        const auto it = index_.find(key);
        if (it != index_.end()) {
          best = EntityMatch{Entity{names_[it->second]}, folded.begin[i], folded.end[j]};
          best_end = j + 1;
        }
      }
      if (best) {
        matches.push_back(std::move(*best));
        i = best_end;
      } else {
        ++i;
      }
    }
    return matches;
  }

 private:
  static std::string trim(std::string_view s) {
    std::size_t first = 0;
    std::size_t last = s.size();
    while (first < last) {
      std::size_t p = first;
      if (!text::is_space(text::decode_at(s, p))) break;
      first = p;
    }
    while (last > first) {
      const char32_t c = text::decode_before(s, last);
      if (!text::is_space(c)) break;
      std::string tmp;
      text::append_utf8(tmp, c);
      last -= tmp.size();
    }
    return std::string{s.substr(first, last - first)};
  }

  static std::string leading_word(std::string_view normalized) {
    std::string out;
    std::size_t pos = 0;
    while (pos < normalized.size()) {
      const char32_t c = text::decode_at(normalized, pos);
      if (!text::is_word_char(c)) break;
      text::append_utf8(out, c);
    }
    return out;
  }

  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::string> names_;
  std::unordered_set<std::string> first_words_;
  std::size_t max_length_ = 0;
};

struct CatalogLoadStats {
  std::size_t loaded = 0;
  std::size_t skipped_blank = 0;
  std::size_t skipped_duplicate = 0;
};

struct LoadedCatalog {
  EntityCatalog catalog;
  CatalogLoadStats stats;
};

/// Reads one name per line (LF or CRLF). The whole stream must be UTF-8.
inline LoadedCatalog load_catalog(std::istream& in) {
  const std::string content{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (const auto bad = text::first_invalid_utf8(content)) {
    throw CatalogLoadError("invalid UTF-8 in name catalog at byte offset " + std::to_string(*bad),
                           *bad);
  }
  LoadedCatalog result;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string::npos) eol = content.size();
    std::string_view line{content.data() + pos, eol - pos};
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = eol + 1;
    if (text::is_blank(line)) {
      ++result.stats.skipped_blank;
    } else if (result.catalog.add(line)) {
      ++result.stats.loaded;
    } else {
      ++result.stats.skipped_duplicate;
    }
  }
  return result;
}

inline std::vector<EntityMatch> find_entities(std::string_view text, const EntityCatalog& catalog) {
  return catalog.find(text);
}

}  // namespace socnet
