#pragma once

// Paged, cached, budgeted access to a search backend.

#include "socnet/snippet.hpp"
#include "socnet/unicode_text.hpp"

#include <chrono>
#include <cstdio>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace socnet {

enum class QueryKind { Connectivity, Pair, Entity };

/// Characters the web search API rejects as query text.
inline constexpr std::string_view kForbiddenQueryChars = "&,+";

class InvalidQuery : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Query {
  std::string raw;
  QueryKind kind = QueryKind::Connectivity;

  friend bool operator==(const Query&, const Query&) = default;
};

/// Quoted phrases and bare terms of a raw query string.
struct ParsedQuery {
  std::vector<std::string> phrases;
  std::vector<std::string> terms;
};

inline ParsedQuery parse_query(std::string_view raw) {
  ParsedQuery out;
  std::string bare;
  std::size_t i = 0;
  while (i < raw.size()) {
    if (raw[i] == '"') {
      const auto close = raw.find('"', i + 1);
      if (close == std::string_view::npos) throw InvalidQuery("unbalanced quote in query: " + std::string(raw));
      out.phrases.emplace_back(raw.substr(i + 1, close - i - 1));
      bare.push_back(' ');
      i = close + 1;
    } else {
      bare.push_back(raw[i++]);
    }
  }
  std::istringstream terms(bare);
  for (std::string t; terms >> t;) out.terms.push_back(std::move(t));
  return out;
}

/// Throws InvalidQuery when quotes are unbalanced or the unquoted part holds
/// a forbidden operator character.
inline void validate_query(std::string_view raw) {
  bool quoted = false;
  for (char c : raw) {
    if (c == '"') {
      quoted = !quoted;
    } else if (!quoted && kForbiddenQueryChars.find(c) != std::string_view::npos) {
      throw InvalidQuery(std::string("forbidden character '") + c + "' in query: " + std::string(raw));
    }
  }
  if (quoted) throw InvalidQuery("unbalanced quote in query: " + std::string(raw));
}

/// A connector phrase can be sent as query text only when it is not the
/// whitespace pattern and carries no forbidden character.
inline bool is_queryable_phrase(std::string_view phrase) {
  if (text::is_blank(phrase)) return false;
  if (phrase.find('"') != std::string_view::npos) return false;
  return phrase.find_first_of(kForbiddenQueryChars) == std::string_view::npos;
}

inline std::string quote(std::string_view name) { return '"' + std::string(name) + '"'; }

inline Query connectivity_query(std::string_view entity, std::string_view pattern) {
  Query q{quote(entity) + ' ' + std::string(pattern), QueryKind::Connectivity};
  validate_query(q.raw);
  return q;
}

inline Query pair_query(std::string_view first, std::string_view second) {
  Query q{quote(first) + ' ' + quote(second), QueryKind::Pair};
  validate_query(q.raw);
  return q;
}

inline Query entity_query(std::string_view entity) {
  Query q{quote(entity), QueryKind::Entity};
  validate_query(q.raw);
  return q;
}

/// Cache key: case-folded, whitespace-collapsed raw query.
inline std::string cache_key(std::string_view raw) { return text::normalize(raw); }

class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A source of ranked results, fetched one page at a time. Implementations
/// must tolerate concurrent calls and throw TransportError on failure.
class SearchBackend {
 public:
  virtual ~SearchBackend() = default;
  virtual std::vector<Snippet> fetch_page(const Query& query, std::size_t offset,
                                          std::size_t count) = 0;
};

struct LedgerEntry {
  std::string query;
  std::uint64_t requests = 0;  // pages charged against the budget
  std::uint64_t billed = 0;    // pages actually fetched from the backend
};

/// Request budget. `used_requests` counts every result page a query needs
/// (whether fetched or replayed from cache) and is what the budget gates
/// on; `billed_requests` counts pages the backend actually served.
class BudgetLedger {
 public:
  explicit BudgetLedger(std::uint64_t max_requests) : max_requests_(max_requests) {}

  void charge(std::string query, std::uint64_t requests, std::uint64_t billed) {
    std::unique_lock lock(mutex_);
    used_ += requests;
    billed_ += billed;
    log_.push_back(LedgerEntry{std::move(query), requests, billed});
  }

  bool exhausted() const {
    std::shared_lock lock(mutex_);
    return used_ >= max_requests_;
  }

  std::uint64_t max_requests() const { return max_requests_; }
  std::uint64_t used_requests() const {
    std::shared_lock lock(mutex_);
    return used_;
  }
  std::uint64_t billed_requests() const {
    std::shared_lock lock(mutex_);
    return billed_;
  }
  std::uint64_t queries() const {
    std::shared_lock lock(mutex_);
    return log_.size();
  }
  std::vector<LedgerEntry> log() const {
    std::shared_lock lock(mutex_);
    return log_;
  }

 private:
  mutable std::shared_mutex mutex_;
  std::uint64_t max_requests_;
  std::uint64_t used_ = 0;
  std::uint64_t billed_ = 0;
  std::vector<LedgerEntry> log_;
};

struct CacheEntry {
  std::string raw_query;
  std::size_t k = 0;          // result limit the entry was fetched with
  std::size_t pages = 0;      // pages the fetch needed
  std::vector<Snippet> snippets;
};

/// 64-bit FNV-1a; stable across platforms, used for cache file names.
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Query result cache, in memory and optionally mirrored to a directory
/// (one file per key: header line with the raw query, then records).
class SnippetCache {
 public:
  SnippetCache() = default;
  explicit SnippetCache(std::filesystem::path directory) : directory_(std::move(directory)) {
    std::filesystem::create_directories(*directory_);
  }

  std::optional<CacheEntry> get(std::string_view raw_query) const {
    const std::string key = cache_key(raw_query);
    {
      std::shared_lock lock(mutex_);
      if (const auto it = memory_.find(key); it != memory_.end()) return it->second;
    }
    if (!directory_) return std::nullopt;
    auto loaded = load(key);
    if (!loaded) return std::nullopt;
    std::unique_lock lock(mutex_);
    memory_.emplace(key, *loaded);
    return loaded;
  }

  void put(const CacheEntry& entry) {
    const std::string key = cache_key(entry.raw_query);
    if (directory_) store(key, entry);
    std::unique_lock lock(mutex_);
    memory_.insert_or_assign(key, entry);
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return memory_.size();
  }

  const std::optional<std::filesystem::path>& directory() const { return directory_; }

  std::filesystem::path file_for(std::string_view raw_query) const {
    char name[32];
    std::snprintf(name, sizeof(name), "%016llx.tsv",
                  static_cast<unsigned long long>(fnv1a64(cache_key(raw_query))));
    return *directory_ / name;
  }

 private:
  std::optional<CacheEntry> load(const std::string& key) const {
    std::ifstream in(file_for(key), std::ios::binary);
    if (!in) return std::nullopt;
    std::string header;
    if (!std::getline(in, header)) return std::nullopt;
    // "#<TAB>raw<TAB>k<TAB>pages"
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      const auto tab = header.find('\t', pos);
      fields.push_back(header.substr(pos, tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    if (fields.size() != 4 || fields[0] != "#") return std::nullopt;
    CacheEntry entry;
    try {
      entry.raw_query = unescape_field(fields[1], 1);
      entry.k = std::stoul(fields[2]);
      entry.pages = std::stoul(fields[3]);
      if (cache_key(entry.raw_query) != key) return std::nullopt;  // hash collision
      entry.snippets = read_records(in, 2);
    } catch (const std::exception&) {
      return std::nullopt;
    }
    for (std::size_t i = 0; i < entry.snippets.size(); ++i) entry.snippets[i].rank = i + 1;
    return entry;
  }

  void store(const std::string& key, const CacheEntry& entry) const {
    const auto target = file_for(key);
    auto temp = target;
    temp += ".tmp";
    {
      std::ofstream out(temp, std::ios::binary | std::ios::trunc);
      out << "#\t" << escape_field(entry.raw_query) << '\t' << entry.k << '\t' << entry.pages << '\n';
      write_records(out, entry.snippets);
      if (!out) throw std::runtime_error("cannot write cache file " + temp.string());
    }
    std::filesystem::rename(temp, target);
  }

  std::optional<std::filesystem::path> directory_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<std::string, CacheEntry> memory_;
};

struct GatewayOptions {
  std::size_t page_size = 50;
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{1000};
};

struct SearchResult {
  std::vector<Snippet> snippets;
  std::size_t requests_consumed = 0;  // pages fetched from the backend
  std::size_t pages = 0;              // pages charged against the budget
  bool from_cache = false;
};

/// Uniform search entry point: budget gate, cache, paging, retries, dedup.
class SearchGateway {
 public:
  SearchGateway(SearchBackend& backend, BudgetLedger& ledger, SnippetCache* cache = nullptr,
                GatewayOptions options = {})
      : backend_(backend), ledger_(ledger), cache_(cache), options_(options) {
    if (options_.page_size == 0) throw std::invalid_argument("page size must be positive");
    if (options_.max_attempts < 1) throw std::invalid_argument("max_attempts must be >= 1");
  }

  SearchResult search(const Query& query, std::size_t k) {
    if (k == 0) throw std::invalid_argument("k must be >= 1");
    validate_query(query.raw);
    if (ledger_.exhausted()) {
      throw BudgetExhausted("request budget of " + std::to_string(ledger_.max_requests()) +
                            " exhausted");
    }
    const std::size_t max_pages = (k + options_.page_size - 1) / options_.page_size;

    if (cache_) {
      if (auto hit = cache_->get(query.raw); hit && hit->k >= k) {
        SearchResult result;
        result.from_cache = true;
        result.snippets = std::move(hit->snippets);
        if (result.snippets.size() > k) result.snippets.resize(k);
        result.pages = std::min(hit->pages, max_pages);
        ledger_.charge(query.raw, result.pages, 0);
        return result;
      }
    }

    SearchResult result;
    std::unordered_set<std::string> seen;
    for (std::size_t page = 0; page < max_pages; ++page) {
      std::vector<Snippet> batch;
      try {
        batch = fetch_with_retry(query, page * options_.page_size);
      } catch (const TransportError&) {
        ledger_.charge(query.raw, result.pages, result.requests_consumed);
        throw;
      }
      ++result.pages;
      ++result.requests_consumed;
      for (auto& s : batch) {
        if (result.snippets.size() == k) break;
        if (!seen.insert(s.url + '\x1f' + s.text).second) continue;
        if (s.domain.empty()) s.domain = registrable_domain(s.url);
        s.rank = result.snippets.size() + 1;
        result.snippets.push_back(std::move(s));
      }
      if (batch.size() < options_.page_size || result.snippets.size() == k) break;
    }
    ledger_.charge(query.raw, result.pages, result.requests_consumed);
    if (cache_) cache_->put(CacheEntry{query.raw, k, result.pages, result.snippets});
    return result;
  }

  BudgetLedger& ledger() { return ledger_; }
  const GatewayOptions& options() const { return options_; }

 private:
  std::vector<Snippet> fetch_with_retry(const Query& query, std::size_t offset) {
    auto delay = options_.initial_backoff;
    for (int attempt = 1;; ++attempt) {
      try {
        return backend_.fetch_page(query, offset, options_.page_size);
      } catch (const TransportError& e) {
        if (attempt >= options_.max_attempts) {
          throw TransportError("search failed after " + std::to_string(attempt) +
                               " attempts: " + e.what());
        }
      }
      std::this_thread::sleep_for(delay);
      delay *= 2;
    }
  }

  SearchBackend& backend_;
  BudgetLedger& ledger_;
  SnippetCache* cache_;
  GatewayOptions options_;
};

}  // namespace socnet
