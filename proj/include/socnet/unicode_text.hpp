#pragma once

// UTF-8 helpers shared by entity recognition, pattern matching and the
// replay backend. Normal form: NFC, simple case folding, whitespace runs
// collapsed to a single space, trimmed.

#include <unicode/uchar.h>
#include <unicode/unorm2.h>
#include <unicode/utf16.h>
#include <unicode/utf8.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace socnet::text {

/// Byte offset of the first ill-formed UTF-8 sequence, if any.
inline std::optional<std::size_t> first_invalid_utf8(std::string_view s) {
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(s.data());
  const auto length = static_cast<std::int32_t>(s.size());
  std::int32_t i = 0;
  while (i < length) {
    const std::int32_t start = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) return static_cast<std::size_t>(start);
  }
  return std::nullopt;
}

inline bool is_space(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)) != 0; }

/// Letters, digits and combining marks; anything else separates tokens.
inline bool is_word_char(char32_t c) {
  const auto cp = static_cast<UChar32>(c);
  if (c < 0x80) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
  }
  if (u_isalnum(cp)) return true;
  const auto type = u_charType(cp);
  return type == U_NON_SPACING_MARK || type == U_COMBINING_SPACING_MARK ||
         type == U_ENCLOSING_MARK;
}

inline void append_utf8(std::string& out, char32_t c) {
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

/// Decodes the code point starting at byte `pos`; ill-formed bytes decode
/// to U+FFFD and advance by one.
inline char32_t decode_at(std::string_view s, std::size_t& pos) {
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(s.data());
  auto i = static_cast<std::int32_t>(pos);
  UChar32 c;
  U8_NEXT(bytes, i, static_cast<std::int32_t>(s.size()), c);
  pos = static_cast<std::size_t>(i);
  return c < 0 ? char32_t{0xFFFD} : static_cast<char32_t>(c);
}

/// Code point ending just before byte `pos` (which must be > 0).
inline char32_t decode_before(std::string_view s, std::size_t pos) {
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(s.data());
  auto i = static_cast<std::int32_t>(pos);
  UChar32 c;
  U8_PREV(bytes, 0, i, c);
  return c < 0 ? char32_t{0xFFFD} : static_cast<char32_t>(c);
}

/// Normalized view of a text: one entry per output code point, each
/// carrying the byte range of the source segment it came from. Whitespace
/// runs appear as a single ' ' spanning the whole run.
struct FoldedText {
  std::vector<char32_t> cps;
  std::vector<std::size_t> begin;
  std::vector<std::size_t> end;

  std::size_t size() const { return cps.size(); }
  bool empty() const { return cps.empty(); }
};

namespace detail {

inline const UNormalizer2* nfc() {
  static const UNormalizer2* instance = [] {
    UErrorCode status = U_ZERO_ERROR;
    const UNormalizer2* n = unorm2_getNFCInstance(&status);
    if (U_FAILURE(status)) throw std::runtime_error("ICU NFC normalizer unavailable");
    return n;
  }();
  return instance;
}

inline void emit(FoldedText& out, char32_t c, std::size_t b, std::size_t e) {
  if (is_space(c)) {
    if (!out.cps.empty() && out.cps.back() == U' ') {
      out.end.back() = e;
      return;
    }
    c = U' ';
  } else {
    c = static_cast<char32_t>(u_foldCase(static_cast<UChar32>(c), U_FOLD_CASE_DEFAULT));
  }
  out.cps.push_back(c);
  out.begin.push_back(b);
  out.end.push_back(e);
}

inline void flush_segment(FoldedText& out, const std::vector<char32_t>& segment, std::size_t b,
                          std::size_t e) {
  if (segment.empty()) return;
  if (segment.size() == 1 && segment.front() < 0x80) {
    emit(out, segment.front(), b, e);
    return;
  }
  std::vector<UChar> utf16;
  utf16.reserve(segment.size() * 2);
  for (char32_t c : segment) {
    UChar buf[2];
    std::int32_t n = 0;
    U16_APPEND_UNSAFE(buf, n, static_cast<UChar32>(c));
    utf16.insert(utf16.end(), buf, buf + n);
  }
  std::vector<UChar> normalized(utf16.size() * 3 + 4);
  UErrorCode status = U_ZERO_ERROR;
  const std::int32_t length =
      unorm2_normalize(nfc(), utf16.data(), static_cast<std::int32_t>(utf16.size()),
                       normalized.data(), static_cast<std::int32_t>(normalized.size()), &status);
  if (U_FAILURE(status)) {
    for (char32_t c : segment) emit(out, c, b, e);
    return;
  }
  for (std::int32_t i = 0; i < length;) {
    UChar32 c;
    U16_NEXT(normalized.data(), i, length, c);
    emit(out, static_cast<char32_t>(c), b, e);
  }
}

}  // namespace detail

/// NFC + case fold + whitespace collapse, keeping source byte offsets.
/// Segments are cut at normalization boundaries so every output code point
/// maps back to a whole run of source bytes.
inline FoldedText fold(std::string_view s) {
  FoldedText out;
  out.cps.reserve(s.size());
  out.begin.reserve(s.size());
  out.end.reserve(s.size());
  std::vector<char32_t> segment;
  std::size_t segment_begin = 0;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const std::size_t start = pos;
    const char32_t c = decode_at(s, pos);
    const bool boundary =
        c < 0x300 || unorm2_hasBoundaryBefore(detail::nfc(), static_cast<UChar32>(c));
    if (boundary && !segment.empty()) {
      detail::flush_segment(out, segment, segment_begin, start);
      segment.clear();
    }
    if (segment.empty()) segment_begin = start;
    segment.push_back(c);
  }
  detail::flush_segment(out, segment, segment_begin, s.size());
  return out;
}

inline std::string to_utf8(const FoldedText& t, std::size_t first, std::size_t last) {
  std::string out;
  out.reserve(last - first);
  for (std::size_t i = first; i < last; ++i) append_utf8(out, t.cps[i]);
  return out;
}

/// Canonical comparison form of a string (see file comment).
inline std::string normalize(std::string_view s) {
  const FoldedText t = fold(s);
  std::size_t first = 0;
  std::size_t last = t.size();
  while (first < last && t.cps[first] == U' ') ++first;
  while (last > first && t.cps[last - 1] == U' ') --last;
  return to_utf8(t, first, last);
}

inline bool is_blank(std::string_view s) {
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (!is_space(decode_at(s, pos))) return false;
  }
  return true;
}

inline std::size_t count_code_points(std::string_view s) {
  std::size_t n = 0;
  for (std::size_t pos = 0; pos < s.size(); ++n) decode_at(s, pos);
  return n;
}

/// Whether any code point of `s` is a word character.
inline bool has_word_char(std::string_view s) {
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (is_word_char(decode_at(s, pos))) return true;
  }
  return false;
}

/// Splits an already-normalized string on single spaces.
inline std::vector<std::string_view> split_spaces(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const std::size_t next = s.find(' ', pos);
    const std::size_t stop = next == std::string_view::npos ? s.size() : next;
    if (stop > pos) parts.push_back(s.substr(pos, stop - pos));
    pos = stop + 1;
  }
  return parts;
}

/// Token-bounded occurrence of `needle` in `haystack`, both normalized.
inline bool contains_bounded(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return true;
  const bool needle_starts_word = is_word_char([&] {
    std::size_t p = 0;
    return decode_at(needle, p);
  }());
  const bool needle_ends_word = is_word_char(decode_before(needle, needle.size()));
  std::size_t from = 0;
  while (true) {
    const std::size_t at = haystack.find(needle, from);
    if (at == std::string_view::npos) return false;
    const std::size_t stop = at + needle.size();
    const bool left_ok =
        at == 0 || !needle_starts_word || !is_word_char(decode_before(haystack, at));
    bool right_ok = stop == haystack.size() || !needle_ends_word;
    if (!right_ok) {
      std::size_t p = stop;
      right_ok = !is_word_char(decode_at(haystack, p));
    }
    if (left_ok && right_ok) return true;
    from = at + 1;
  }
}

/// Maximal runs of word characters, in order.
inline std::vector<std::string> word_tokens(std::string_view normalized) {
  std::vector<std::string> out;
  std::string current;
  std::size_t pos = 0;
  while (pos < normalized.size()) {
    const char32_t c = decode_at(normalized, pos);
    if (is_word_char(c)) {
      append_utf8(current, c);
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

}  // namespace socnet::text
