#pragma once

// Pairwise co-occurrence baseline: query each entity alone, harvest
// co-mentioned entities from its snippets, then issue one pair query per
// (entity, candidate) and keep pairs whose overlap coefficient
//   |pair results| / min(|results(a)|, |results(b)|)
// exceeds a threshold t.

#include "socnet/entity_catalog.hpp"
#include "socnet/expansion_engine.hpp"
#include "socnet/graph_store.hpp"
#include "socnet/search_gateway.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace socnet {

struct BaselineConfig {
  std::vector<Entity> seeds;
  double threshold = 0.1;
  std::size_t k = 200;
  std::uint64_t max_requests = 200'000;
};

class PairwiseBaseline {
 public:
  PairwiseBaseline(const BaselineConfig& config, SearchGateway& gateway, const EntityCatalog& catalog)
      : config_(config), gateway_(gateway), catalog_(catalog) {
    if (!(config_.threshold > 0 && config_.threshold < 1)) {
      throw ConfigError("co-occurrence threshold must be in (0, 1)");
    }
    if (config_.k < 1) throw ConfigError("k must be >= 1");
    if (config_.seeds.empty()) throw ConfigError("seed set is empty");
    for (const auto& s : config_.seeds) {
      if (!catalog_.contains(s)) throw ConfigError("seed not in catalog: " + s.name);
    }
  }

  RunOutcome run() {
    report_.mode = RunMode::BreadthFirst;
    try {
      loop();
    } catch (const BudgetExhausted&) {
      report_.budget_exhausted = true;
    } catch (const TransportError& e) {
      report_.incomplete = true;
      report_.error = e.what();
    }
    report_.nodes_found = graph_.node_count();
    report_.edges_found = graph_.edge_count();
    report_.requests_charged = gateway_.ledger().used_requests();
    report_.requests_used = gateway_.ledger().billed_requests();
    return RunOutcome{std::move(graph_), std::move(report_), {}};
  }

 private:
  void loop() {
    for (const auto& s : config_.seeds) {
      graph_.add_node(s.name);
      enqueue(s.name);
    }
    while (!pool_.empty()) {
      if (gateway_.ledger().exhausted()) {
        report_.budget_exhausted = true;
        return;
      }
      const std::string e = pool_.front();
      pool_.pop_front();
      const std::size_t nodes_before = graph_.node_count();
      const std::size_t edges_before = graph_.edge_count();
      try {
        step(e);
      } catch (const BudgetExhausted&) {
        record(e, nodes_before, edges_before);
        throw;
      }
      record(e, nodes_before, edges_before);
    }
  }

  void step(const std::string& e) {
    const auto& own = single(e);
    std::vector<std::string> candidates;
    std::unordered_set<std::string> seen;
    for (const auto& s : own.snippets) {
      for (const auto& m : catalog_.find(s.text)) {
        if (m.entity.name != e && seen.insert(m.entity.name).second) candidates.push_back(m.entity.name);
      }
    }
    for (const auto& c : candidates) {
      const auto pair = EntityPair::of(e, c);
      if (!evaluated_.insert(pair).second) continue;
      const std::size_t count_c = single(c).hits;
      const std::size_t count_e = single(e).hits;
      const SearchResult joint = gateway_.search(pair_query(e, c), config_.k);
      ++report_.queries_issued;
      ++report_.pair_queries;
      std::uint64_t co = 0;
      for (const auto& s : joint.snippets) {
        bool has_e = false;
        bool has_c = false;
        for (const auto& m : catalog_.find(s.text)) {
          has_e |= m.entity.name == e;
          has_c |= m.entity.name == c;
        }
        if (has_e && has_c) ++co;
      }
      const std::size_t denominator = std::min(count_e, count_c);
      const double score = denominator == 0 ? 0.0 : static_cast<double>(co) / static_cast<double>(denominator);
      if (co > 0 && score > config_.threshold) graph_.add_weight(e, c, co);
      enqueue(c);
    }
  }

  struct SingleResult {
    std::size_t hits = 0;
    std::vector<Snippet> snippets;
  };

  const SingleResult& single(const std::string& name) {
    if (const auto it = singles_.find(name); it != singles_.end()) return it->second;
    SearchResult r = gateway_.search(entity_query(name), config_.k);
    ++report_.queries_issued;
    SingleResult s{r.snippets.size(), std::move(r.snippets)};
    return singles_.emplace(name, std::move(s)).first->second;
  }

  void enqueue(const std::string& name) {
    if (queued_.insert(name).second) pool_.push_back(name);
  }

  void record(const std::string& entity, std::size_t nodes_before, std::size_t edges_before) {
    report_.trace.push_back(TraceStep{step_++, TraceKind::Expansion, entity,
                                      graph_.node_count() - nodes_before, graph_.edge_count() - edges_before,
                                      gateway_.ledger().used_requests(), graph_.node_count(),
                                      graph_.edge_count()});
  }

  BaselineConfig config_;
  SearchGateway& gateway_;
  const EntityCatalog& catalog_;
  SocialGraph graph_;
  RunReport report_;
  std::deque<std::string> pool_;
  std::unordered_set<std::string> queued_;
  std::set<EntityPair> evaluated_;
  std::unordered_map<std::string, SingleResult> singles_;
  std::uint64_t step_ = 0;
};

inline RunOutcome baseline_pairwise(const BaselineConfig& config, SearchGateway& gateway,
                                    const EntityCatalog& catalog) {
  return PairwiseBaseline(config, gateway, catalog).run();
}

inline RunOutcome baseline_pairwise(const BaselineConfig& config, SearchBackend& backend,
                                    const EntityCatalog& catalog, SnippetCache* cache = nullptr,
                                    GatewayOptions options = {}) {
  BudgetLedger ledger(config.max_requests);
  SearchGateway gateway(backend, ledger, cache, options);
  return baseline_pairwise(config, gateway, catalog);
}

}  // namespace socnet
