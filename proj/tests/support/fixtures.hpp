#pragma once

#include "socnet/entity_catalog.hpp"
#include "socnet/search_gateway.hpp"
#include "socnet/snippet.hpp"

#include <atomic>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace socnet::testing {

inline EntityCatalog catalog_of(std::initializer_list<std::string_view> names) {
  EntityCatalog c;
  for (auto n : names) c.add(n);
  return c;
}

inline EntityCatalog catalog_of(const std::vector<std::string>& names) {
  EntityCatalog c;
  for (const auto& n : names) c.add(n);
  return c;
}

inline Snippet snip(std::string text, std::string domain = "example.com", std::string url = {}) {
  static std::atomic<std::size_t> serial{0};
  Snippet s;
  s.text = std::move(text);
  s.domain = std::move(domain);
  s.url = url.empty() ? "http://" + s.domain + "/" + std::to_string(serial++) : std::move(url);
  return s;
}

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("socnet-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string str(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

/// Backend serving a fixed number of synthetic results per query, counting
/// fetches, optionally failing the first `failures` calls.
class CountingBackend : public SearchBackend {
 public:
  explicit CountingBackend(std::size_t results, int failures = 0) : results_(results), failures_(failures) {}

  std::vector<Snippet> fetch_page(const Query& query, std::size_t offset, std::size_t count) override {
    ++calls;
    if (failures_ > 0) {
      --failures_;
      throw TransportError("simulated outage");
    }
    std::vector<Snippet> page;
    for (std::size_t i = offset; i < results_ && page.size() < count; ++i) {
      Snippet s;
      s.text = query.raw + " result " + std::to_string(i);
      s.url = "http://site" + std::to_string(i % 7) + ".org/" + std::to_string(i);
      s.domain = "site" + std::to_string(i % 7) + ".org";
      page.push_back(std::move(s));
    }
    return page;
  }

  std::atomic<int> calls{0};

 private:
  std::size_t results_;
  std::atomic<int> failures_;
};

inline GatewayOptions fast_retries() {
  GatewayOptions o;
  o.initial_backoff = std::chrono::milliseconds(1);
  return o;
}

}  // namespace socnet::testing
