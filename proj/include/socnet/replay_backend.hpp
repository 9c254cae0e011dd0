#pragma once

#include "socnet/search_gateway.hpp"
#include "socnet/snippet.hpp"
#include "socnet/unicode_text.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace socnet {

/// Deterministic backend answering queries from a stored snippet corpus.
/// A record matches when its text contains every quoted phrase and every
/// bare term of the query (token-bounded, after normalization). Results
/// keep corpus order.
class ReplayBackend : public SearchBackend {
 public:
  explicit ReplayBackend(std::vector<Snippet> corpus) : corpus_(std::move(corpus)) {
    normalized_.reserve(corpus_.size());
    for (std::size_t id = 0; id < corpus_.size(); ++id) {
      normalized_.push_back(text::normalize(corpus_[id].text));
      auto tokens = text::word_tokens(normalized_.back());
      std::sort(tokens.begin(), tokens.end());
      tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
      for (auto& t : tokens) postings_[std::move(t)].push_back(id);
    }
  }

  static ReplayBackend from_stream(std::istream& in) { return ReplayBackend(read_records(in)); }

  static ReplayBackend from_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open corpus " + path.string());
    return from_stream(in);
  }

  std::vector<Snippet> fetch_page(const Query& query, std::size_t offset,
                                  std::size_t count) override {
    const auto ids = matching(query.raw);
    std::vector<Snippet> page;
    for (std::size_t i = offset; i < ids.size() && page.size() < count; ++i) {
      page.push_back(corpus_[ids[i]]);
      page.back().rank = i + 1;
    }
    return page;
  }

  /// Indices of all matching corpus records, in corpus order.
  std::vector<std::size_t> matching(const std::string& raw) {
    {
      std::lock_guard lock(mutex_);
      if (const auto it = memo_.find(raw); it != memo_.end()) return it->second;
    }
    auto ids = evaluate(raw);
    std::lock_guard lock(mutex_);
    memo_.emplace(raw, ids);
    return ids;
  }

  std::size_t size() const { return corpus_.size(); }
  const std::vector<Snippet>& records() const { return corpus_; }

 private:
  std::vector<std::size_t> evaluate(const std::string& raw) const {
    const ParsedQuery parsed = parse_query(raw);
    std::vector<std::string> needles;
    for (const auto& p : parsed.phrases) {
      auto n = text::normalize(p);
      if (!n.empty()) needles.push_back(std::move(n));
    }
    for (const auto& t : parsed.terms) {
      if (!text::has_word_char(t)) continue;  // punctuation-only terms are ignored
      needles.push_back(text::normalize(t));
    }
    if (needles.empty()) return {};

    // Candidate set: postings of the rarest word token among the needles.
    const std::vector<std::size_t>* best = nullptr;
    for (const auto& needle : needles) {
      for (const auto& token : text::word_tokens(needle)) {
        const auto it = postings_.find(token);
        if (it == postings_.end()) return {};
        if (!best || it->second.size() < best->size()) best = &it->second;
      }
    }
    std::vector<std::size_t> out;
    const auto check = [&](std::size_t id) {
      return std::all_of(needles.begin(), needles.end(), [&](const std::string& needle) {
        return text::contains_bounded(normalized_[id], needle);
      });
    };
    if (best) {
      for (std::size_t id : *best) {
        if (check(id)) out.push_back(id);
      }
    } else {
      for (std::size_t id = 0; id < corpus_.size(); ++id) {
        if (check(id)) out.push_back(id);
      }
    }
    return out;
  }

  std::vector<Snippet> corpus_;
  std::vector<std::string> normalized_;
  std::unordered_map<std::string, std::vector<std::size_t>> postings_;
  std::mutex mutex_;
  std::unordered_map<std::string, std::vector<std::size_t>> memo_;
};

}  // namespace socnet
