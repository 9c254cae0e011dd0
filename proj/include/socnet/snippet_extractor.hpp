#pragma once

// Entity-pattern-entity matching over result snippets.

#include "socnet/entity_catalog.hpp"
#include "socnet/snippet.hpp"
#include "socnet/unicode_text.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace socnet {

inline constexpr std::size_t kMaxPatternChars = 60;
inline constexpr std::size_t kMaxPatternTokens = 8;

/// The whitespace-only connector ("A B").
inline constexpr std::string_view kSpacePattern = " ";

enum class PatternOrigin { Seed, Mined };

/// A connector phrase, stored in normalized form.
class Pattern {
 public:
  explicit Pattern(std::string_view phrase, PatternOrigin origin = PatternOrigin::Seed)
      : origin_(origin) {
    if (!phrase.empty() && text::is_blank(phrase)) {
      phrase_ = std::string(kSpacePattern);
      return;
    }
    phrase_ = text::normalize(phrase);
    if (phrase_.empty()) throw std::invalid_argument("pattern phrase is empty");
    if (text::count_code_points(phrase_) > kMaxPatternChars) {
      throw std::invalid_argument("pattern longer than " + std::to_string(kMaxPatternChars) +
                                  " characters: " + phrase_);
    }
  }

  static Pattern space(PatternOrigin origin = PatternOrigin::Seed) { return Pattern(kSpacePattern, origin); }

  const std::string& phrase() const { return phrase_; }
  PatternOrigin origin() const { return origin_; }
  bool is_space() const { return phrase_ == kSpacePattern; }

  friend bool operator==(const Pattern& a, const Pattern& b) { return a.phrase_ == b.phrase_; }

 private:
  std::string phrase_;
  PatternOrigin origin_;
};

/// Unordered entity pair, stored with `first < second` bytewise.
struct EntityPair {
  std::string first;
  std::string second;

  static EntityPair of(std::string a, std::string b) {
    if (b < a) std::swap(a, b);
    return EntityPair{std::move(a), std::move(b)};
  }

  bool involves(std::string_view name) const { return first == name || second == name; }
  const std::string& other(std::string_view name) const { return first == name ? second : first; }

  friend auto operator<=>(const EntityPair&, const EntityPair&) = default;
};

struct PatternOccurrence {
  std::string pattern;
  std::string domain;

  friend bool operator==(const PatternOccurrence&, const PatternOccurrence&) = default;
};

struct EdgeEvidence {
  EntityPair pair;
  std::uint64_t count = 0;
  std::vector<PatternOccurrence> occurrences;
};

namespace detail {

/// Text between two adjacent mentions, or nullopt when they touch.
inline std::optional<std::string> gap_key(std::string_view text, const EntityMatch& left,
                                          const EntityMatch& right) {
  const std::string_view gap = text.substr(left.end, right.begin - left.end);
  if (gap.empty()) return std::nullopt;
  if (text::is_blank(gap)) return std::string(kSpacePattern);
  return text::normalize(gap);
}

template <class Visitor>
void for_each_adjacent_pair(const Snippet& snippet, const EntityCatalog& catalog, Visitor&& visit) {
  const auto matches = catalog.find(snippet.text);
  for (std::size_t i = 0; i + 1 < matches.size(); ++i) {
    if (matches[i].entity == matches[i + 1].entity) continue;
    visit(matches[i], matches[i + 1]);
  }
}

}  // namespace detail

/// Counts `<entity> <pattern> <entity>` occurrences between consecutive
/// mentions. Output is sorted by pair; each pair's occurrences are in
/// snippet order.
inline std::vector<EdgeEvidence> extract_edges(const std::vector<Snippet>& snippets,
                                               const std::vector<Pattern>& patterns,
                                               const EntityCatalog& catalog) {
  if (patterns.empty()) throw std::invalid_argument("extract_edges needs at least one pattern");
  std::set<std::string, std::less<>> phrases;
  for (const auto& p : patterns) phrases.insert(p.phrase());

  std::map<EntityPair, EdgeEvidence> evidence;
  for (const auto& snippet : snippets) {
    detail::for_each_adjacent_pair(snippet, catalog, [&](const EntityMatch& a, const EntityMatch& b) {
      const auto key = detail::gap_key(snippet.text, a, b);
      if (!key) return;
      const auto hit = phrases.find(*key);
      if (hit == phrases.end()) return;
      auto pair = EntityPair::of(a.entity.name, b.entity.name);
      auto& e = evidence[pair];
      e.pair = std::move(pair);
      ++e.count;
      e.occurrences.push_back(PatternOccurrence{*hit, snippet.domain});
    });
  }
  std::vector<EdgeEvidence> out;
  out.reserve(evidence.size());
  for (auto& [pair, e] : evidence) out.push_back(std::move(e));
  return out;
}

struct PatternCandidate {
  std::string phrase;
  std::uint64_t n = 0;  // occurrences (support)
  std::uint64_t m = 0;  // distinct entity pairs (diversity)
  std::uint64_t d = 0;  // distinct domains (spam resistance)

  friend bool operator==(const PatternCandidate&, const PatternCandidate&) = default;
};

/// n * m * d^2.
inline std::uint64_t pattern_score(std::uint64_t n, std::uint64_t m, std::uint64_t d) {
  return n * m * d * d;
}

inline std::uint64_t pattern_score(const PatternCandidate& c) { return pattern_score(c.n, c.m, c.d); }

/// Aggregates every connector string found between consecutive distinct
/// mentions. Sorted by score descending, then phrase.
inline std::vector<PatternCandidate> extract_pattern_candidates(const std::vector<Snippet>& snippets,
                                                                const EntityCatalog& catalog) {
  struct Accumulator {
    std::uint64_t n = 0;
    std::set<EntityPair> pairs;
    std::set<std::string> domains;
  };
  std::map<std::string, Accumulator> acc;
  for (const auto& snippet : snippets) {
    detail::for_each_adjacent_pair(snippet, catalog, [&](const EntityMatch& a, const EntityMatch& b) {
      const auto key = detail::gap_key(snippet.text, a, b);
      if (!key || key->empty()) return;
      if (*key != kSpacePattern) {
        if (text::count_code_points(*key) > kMaxPatternChars) return;
        if (text::split_spaces(*key).size() > kMaxPatternTokens) return;
        if (!catalog.find(*key).empty()) return;
      }
      auto& slot = acc[*key];
      ++slot.n;
      slot.pairs.insert(EntityPair::of(a.entity.name, b.entity.name));
      slot.domains.insert(snippet.domain);
    });
  }
  std::vector<PatternCandidate> out;
  out.reserve(acc.size());
  for (const auto& [phrase, a] : acc) {
    out.push_back(PatternCandidate{phrase, a.n, a.pairs.size(), a.domains.size()});
  }
  std::stable_sort(out.begin(), out.end(), [](const PatternCandidate& x, const PatternCandidate& y) {
    return pattern_score(x) > pattern_score(y);
  });
  return out;
}

/// Pattern file line syntax: "\s" is the whitespace pattern; "\\", "\t"
/// and "\_" (a literal space) are escapes. Blank lines and lines starting
/// with '#' are ignored.
inline std::vector<Pattern> read_patterns(std::istream& in, PatternOrigin origin = PatternOrigin::Seed) {
  std::vector<Pattern> out;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (line == "\\s") {
      out.push_back(Pattern::space(origin));
      continue;
    }
    std::string phrase;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] != '\\' || i + 1 == line.size()) {
        phrase.push_back(line[i]);
        continue;
      }
      switch (line[++i]) {
        case '\\': phrase.push_back('\\'); break;
        case 't': phrase.push_back('\t'); break;
        case '_': phrase.push_back(' '); break;
        case 's': phrase.push_back(' '); break;
        default:
          throw std::invalid_argument("pattern file line " + std::to_string(n) + ": unknown escape");
      }
    }
    try {
      Pattern p(phrase, origin);
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("pattern file line " + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

inline std::string format_pattern_line(const Pattern& p) {
  if (p.is_space()) return "\\s";
  std::string out;
  for (char c : p.phrase()) {
    if (c == '\\') out += "\\\\";
    else if (c == '\t') out += "\\t";
    else out.push_back(c);
  }
  return out;
}

inline void write_patterns(std::ostream& out, const std::vector<Pattern>& patterns) {
  for (const auto& p : patterns) out << format_pattern_line(p) << '\n';
}

}  // namespace socnet
