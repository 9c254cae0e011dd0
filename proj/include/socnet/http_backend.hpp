#pragma once

// Live web-search backend over HTTP(S). Expects a Bing-style JSON body:
//   { "webPages": { "value": [ { "url": ..., "snippet": ... }, ... ] } }
// A top-level "results" array with the same item shape is also accepted.

#include "socnet/search_gateway.hpp"
#include "socnet/snippet.hpp"

#include <httplib.h>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <mutex>
#include <semaphore>
#include <string>
#include <thread>
#include <vector>

namespace socnet {

struct LiveBackendConfig {
  std::string endpoint = "https://api.bing.microsoft.com/v7.0/search";
  std::string api_key_env = "SEARCH_API_KEY";
  std::string api_key_header = "Ocp-Apim-Subscription-Key";
  std::size_t page_size = 50;
  std::ptrdiff_t max_in_flight = 4;
  std::chrono::milliseconds min_interval{0};
  std::chrono::seconds timeout{30};
};

inline std::string url_encode(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(s.size() * 3);
  for (unsigned char c : s) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 15]);
    }
  }
  return out;
}

/// Extracts result items from a search response body; throws TransportError
/// when the body is not the expected JSON shape.
inline std::vector<Snippet> parse_search_response(std::string_view body) {
  const auto doc = nlohmann::json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw TransportError("malformed search response");
  const nlohmann::json* items = nullptr;
  if (const auto wp = doc.find("webPages"); wp != doc.end() && wp->is_object()) {
    if (const auto v = wp->find("value"); v != wp->end() && v->is_array()) items = &*v;
  } else if (const auto r = doc.find("results"); r != doc.end() && r->is_array()) {
    items = &*r;
  }
  std::vector<Snippet> out;
  if (!items) return out;  // no web results for this query
  for (const auto& item : *items) {
    if (!item.is_object()) continue;
    Snippet s;
    s.url = item.value("url", "");
    s.text = item.value("snippet", "");
    if (s.url.empty() || s.text.empty()) continue;
    s.domain = registrable_domain(s.url);
    if (s.domain.empty()) continue;
    out.push_back(std::move(s));
  }
  return out;
}

/// Thin HTTP client with bounded concurrency and a minimum spacing between
/// requests.
class LiveSearchBackend : public SearchBackend {
 public:
  explicit LiveSearchBackend(LiveBackendConfig config)
      : config_(std::move(config)), slots_(config_.max_in_flight) {
    const auto scheme_end = config_.endpoint.find("://");
    if (scheme_end == std::string::npos) throw std::invalid_argument("endpoint must be an absolute URL");
    const auto path_start = config_.endpoint.find('/', scheme_end + 3);
    origin_ = config_.endpoint.substr(0, path_start);
    path_ = path_start == std::string::npos ? "/" : config_.endpoint.substr(path_start);
    if (const char* key = std::getenv(config_.api_key_env.c_str())) api_key_ = key;
  }

  bool has_api_key() const { return !api_key_.empty(); }

  std::vector<Snippet> fetch_page(const Query& query, std::size_t offset,
                                  std::size_t count) override {
    slots_.acquire();
    struct Release {
      std::counting_semaphore<>& s;
      ~Release() { s.release(); }
    } release{slots_};
    pace();

    httplib::Client client(origin_);
    client.set_connection_timeout(config_.timeout);
    client.set_read_timeout(config_.timeout);
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace(config_.api_key_header, api_key_);
    const std::string target = path_ + (path_.find('?') == std::string::npos ? "?" : "&") +
                               "q=" + url_encode(query.raw) + "&count=" + std::to_string(count) +
                               "&offset=" + std::to_string(offset);
    const auto response = client.Get(target, headers);
    if (!response) throw TransportError("request failed: " + httplib::to_string(response.error()));
    if (response->status != 200) {
      throw TransportError("search endpoint returned HTTP " + std::to_string(response->status));
    }
    return parse_search_response(response->body);
  }

 private:
  void pace() {
    if (config_.min_interval.count() <= 0) return;
    std::unique_lock lock(pace_mutex_);
    const auto now = std::chrono::steady_clock::now();
    if (now < next_slot_) std::this_thread::sleep_until(next_slot_);
    next_slot_ = std::max(now, next_slot_) + config_.min_interval;
  }

  LiveBackendConfig config_;
  std::counting_semaphore<> slots_;
  std::string origin_;
  std::string path_;
  std::string api_key_;
  std::mutex pace_mutex_;
  std::chrono::steady_clock::time_point next_slot_{};
};

}  // namespace socnet
