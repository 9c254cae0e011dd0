#pragma once

// Budgeted graph expansion with a static pattern set (breadth-first or
// prioritized), and iterative expansion that mines new connector patterns
// from the heaviest edges after each round.

#include "socnet/csv.hpp"
#include "socnet/entity_catalog.hpp"
#include "socnet/frontier.hpp"
#include "socnet/graph_store.hpp"
#include "socnet/search_gateway.hpp"
#include "socnet/snippet_extractor.hpp"

#include <cstdint>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace socnet {

enum class RunMode { BreadthFirst, Priority, PatternIteration };

inline const char* to_string(RunMode m) {
  switch (m) {
    case RunMode::BreadthFirst: return "bf";
    case RunMode::Priority: return "prio";
    case RunMode::PatternIteration: return "pattern-iter";
  }
  return "?";
}

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::vector<Entity> seeds;
  std::vector<Pattern> initial_patterns{Pattern("and")};
  std::vector<Pattern> match_patterns;  // matched in snippets, in addition to the query patterns
  std::uint64_t tau = 2;
  std::uint64_t sigma = 5;
  double alpha = 0.0;
  std::size_t h = 100;
  std::size_t k = 200;
  std::uint64_t max_requests = 200'000;
  std::size_t max_iterations = 2;
  RunMode mode = RunMode::BreadthFirst;

  void validate(const EntityCatalog& catalog) const {
    if (tau < 1) throw ConfigError("tau must be >= 1");
    if (sigma < 1) throw ConfigError("sigma must be >= 1");
    if (h < 1) throw ConfigError("h must be >= 1");
    if (k < 1) throw ConfigError("k must be >= 1");
    if (!(alpha >= 0)) throw ConfigError("alpha must be >= 0");
    if (max_requests < 1) throw ConfigError("max_requests must be >= 1");
    if (mode == RunMode::PatternIteration && max_iterations < 1) {
      throw ConfigError("max_iterations must be >= 1");
    }
    if (seeds.empty()) throw ConfigError("seed set is empty");
    if (initial_patterns.empty()) throw ConfigError("initial pattern set is empty");
    for (const auto& s : seeds) {
      if (!catalog.contains(s)) throw ConfigError("seed not in catalog: " + s.name);
    }
  }
};

enum class TraceKind { Expansion, PatternMining };

struct TraceStep {
  std::uint64_t step = 0;
  TraceKind kind = TraceKind::Expansion;
  std::string entity;  // popped entity; empty for mining rounds
  std::size_t new_nodes = 0;
  std::size_t new_edges = 0;
  std::uint64_t requests = 0;  // cumulative budget-charged requests
  std::size_t nodes = 0;       // |V| after the step
  std::size_t edges = 0;       // |E| after the step

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct AdmittedPattern {
  std::size_t iteration = 0;  // 1-based
  PatternCandidate candidate;
  std::uint64_t score = 0;
};

struct RunReport {
  RunMode mode = RunMode::BreadthFirst;
  std::size_t nodes_found = 0;
  std::size_t edges_found = 0;
  std::uint64_t requests_used = 0;     // pages fetched from the backend
  std::uint64_t requests_charged = 0;  // pages charged against the budget
  std::uint64_t queries_issued = 0;
  std::uint64_t pair_queries = 0;
  std::uint64_t pair_requests = 0;
  std::size_t patterns_active = 0;
  std::size_t iterations_completed = 0;
  bool budget_exhausted = false;
  bool incomplete = false;
  std::string error;
  std::vector<TraceStep> trace;
  std::vector<AdmittedPattern> admitted;
};

struct RunOutcome {
  SocialGraph graph;
  RunReport report;
  std::vector<Pattern> patterns;  // final query pattern set
};

/// Shared machinery of both algorithms.
class ExpansionEngine {
 public:
  ExpansionEngine(const RunConfig& config, SearchGateway& gateway, const EntityCatalog& catalog)
      : config_(validated(config, catalog)), gateway_(gateway), catalog_(catalog),
        frontier_(config.mode == RunMode::Priority ? FrontierMode::Priority : FrontierMode::Fifo,
                  config.alpha) {
    query_patterns_ = config_.initial_patterns;
    for (const auto& p : query_patterns_) add_match_pattern(p);
    for (const auto& p : config_.match_patterns) add_match_pattern(p);
    report_.mode = config_.mode;
  }

  RunOutcome run() {
    try {
      if (config_.mode == RunMode::PatternIteration) {
        run_pattern_iteration();
      } else {
        run_static();
      }
    } catch (const TransportError& e) {
      report_.incomplete = true;
      report_.error = e.what();
    }
    finish_report();
    return RunOutcome{std::move(graph_), std::move(report_), query_patterns_};
  }

 private:
  static const RunConfig& validated(const RunConfig& config, const EntityCatalog& catalog) {
    config.validate(catalog);
    return config;
  }

  struct StepDelta {
    std::size_t new_nodes = 0;
    std::vector<std::string> neighbours;  // other endpoints of new edges, sorted
  };

  void run_static() {
    for (const auto& s : config_.seeds) {
      graph_.add_node(s.name);
      frontier_.push(s, 0, 0);
    }
    while (auto entry = frontier_.pop_refreshed(step_)) {
      const StepDelta delta = expand(entry->entity);
      for (const auto& n : delta.neighbours) {
        frontier_.push(Entity{n}, step_, graph_.degree(n));
      }
      record(TraceKind::Expansion, entry->entity.name, delta);
      if (gateway_.ledger().exhausted()) {
        report_.budget_exhausted = true;
        break;
      }
    }
  }

  void run_pattern_iteration() {
    std::vector<Entity> candidates;
    std::unordered_set<std::string> in_candidates;
    for (const auto& s : config_.seeds) {
      graph_.add_node(s.name);
      if (in_candidates.insert(s.name).second) candidates.push_back(s);
    }
    for (std::size_t iteration = 1; iteration <= config_.max_iterations; ++iteration) {
      std::vector<Entity> found;
      for (const auto& e : std::vector<Entity>(candidates)) {
        if (gateway_.ledger().exhausted()) {
          report_.budget_exhausted = true;
          return;
        }
        const StepDelta delta = expand(e);
        for (const auto& n : delta.neighbours) {
          if (in_candidates.insert(n).second) found.push_back(Entity{n});
        }
        record(TraceKind::Expansion, e.name, delta);
      }
      candidates.insert(candidates.end(), found.begin(), found.end());
      if (gateway_.ledger().exhausted()) {
        report_.budget_exhausted = true;
        return;
      }
      mine(iteration);
      report_.iterations_completed = iteration;
    }
  }

  /// Issues every not-yet-issued connectivity query for `e`, then merges
  /// the evidence incident to `e`.
  StepDelta expand(const Entity& e) {
    std::vector<Snippet> snippets;
    std::unordered_set<std::string> seen;
    for (const auto& p : query_patterns_) {
      if (!is_queryable_phrase(p.phrase())) continue;
      const std::string issued_key = e.name + '\x1f' + p.phrase();
      if (issued_.contains(issued_key)) continue;
      Query q;
      try {
        q = connectivity_query(e.name, p.phrase());
      } catch (const InvalidQuery&) {
        continue;
      }
      SearchResult result;
      try {
        result = gateway_.search(q, config_.k);
      } catch (const BudgetExhausted&) {
        report_.budget_exhausted = true;
        break;
      }
      issued_.insert(issued_key);
      ++report_.queries_issued;
      for (auto& s : result.snippets) {
        if (seen.insert(s.url + '\x1f' + s.text).second) snippets.push_back(std::move(s));
      }
    }
    auto evidence = extract_edges(snippets, match_patterns_, catalog_);
    std::erase_if(evidence, [&](const EdgeEvidence& ev) { return !ev.pair.involves(e.name); });
    const MergeResult merged = merge_evidence(graph_, evidence, config_.tau);

    StepDelta delta;
    delta.new_nodes = merged.new_nodes.size();
    for (const auto& edge : merged.new_edges) {
      const std::string& other = edge.pair.other(e.name);
      delta.neighbours.push_back(other);
      frontier_.refresh(other, graph_.degree(other));
    }
    std::sort(delta.neighbours.begin(), delta.neighbours.end());
    last_new_edges_ = merged.new_edges.size();
    return delta;
  }

  void mine(std::size_t iteration) {
    std::vector<Snippet> snippets;
    std::unordered_set<std::string> seen;
    std::uint64_t charged_before = gateway_.ledger().used_requests();
    if (graph_.edge_count() > 0) {
      for (const auto& edge : top_edges(graph_, config_.h)) {
        SearchResult result;
        try {
          result = gateway_.search(pair_query(edge.pair.first, edge.pair.second), config_.k);
        } catch (const BudgetExhausted&) {
          report_.budget_exhausted = true;
          break;
        } catch (const InvalidQuery&) {
          continue;
        }
        ++report_.pair_queries;
        for (auto& s : result.snippets) {
          if (seen.insert(s.url + '\x1f' + s.text).second) snippets.push_back(std::move(s));
        }
      }
    }
    report_.pair_requests += gateway_.ledger().used_requests() - charged_before;

    for (const auto& c : extract_pattern_candidates(snippets, catalog_)) {
      const std::uint64_t score = pattern_score(c);
      if (score <= config_.sigma) continue;
      Pattern p(c.phrase, PatternOrigin::Mined);
      if (std::find(query_patterns_.begin(), query_patterns_.end(), p) != query_patterns_.end()) continue;
      query_patterns_.push_back(p);
      add_match_pattern(p);
      report_.admitted.push_back(AdmittedPattern{iteration, c, score});
    }
    last_new_edges_ = 0;
    record(TraceKind::PatternMining, "", StepDelta{});
  }

  void add_match_pattern(const Pattern& p) {
    if (std::find(match_patterns_.begin(), match_patterns_.end(), p) == match_patterns_.end()) {
      match_patterns_.push_back(p);
    }
  }

  void record(TraceKind kind, const std::string& entity, const StepDelta& delta) {
    report_.trace.push_back(TraceStep{step_, kind, entity, delta.new_nodes, last_new_edges_,
                                      gateway_.ledger().used_requests(), graph_.node_count(),
                                      graph_.edge_count()});
    ++step_;
  }

  void finish_report() {
    report_.nodes_found = graph_.node_count();
    report_.edges_found = graph_.edge_count();
    report_.requests_charged = gateway_.ledger().used_requests();
    report_.requests_used = gateway_.ledger().billed_requests();
    report_.patterns_active = query_patterns_.size();
  }

  RunConfig config_;
  SearchGateway& gateway_;
  const EntityCatalog& catalog_;
  SocialGraph graph_;
  Frontier frontier_;
  std::vector<Pattern> query_patterns_;
  std::vector<Pattern> match_patterns_;
  std::unordered_set<std::string> issued_;
  RunReport report_;
  std::uint64_t step_ = 0;
  std::size_t last_new_edges_ = 0;
};

/// Breadth-first or prioritized expansion with a fixed pattern set.
inline RunOutcome expand_static(const RunConfig& config, SearchGateway& gateway,
                                const EntityCatalog& catalog) {
  if (config.mode == RunMode::PatternIteration) throw ConfigError("expand_static needs mode bf or prio");
  return ExpansionEngine(config, gateway, catalog).run();
}

/// Iterative expansion with pattern mining after every round.
inline RunOutcome expand_with_pattern_mining(const RunConfig& config, SearchGateway& gateway,
                                             const EntityCatalog& catalog) {
  if (config.mode != RunMode::PatternIteration) {
    throw ConfigError("expand_with_pattern_mining needs mode pattern-iter");
  }
  return ExpansionEngine(config, gateway, catalog).run();
}

/// Convenience overloads owning their own ledger and gateway.
inline RunOutcome expand_static(const RunConfig& config, SearchBackend& backend,
                                const EntityCatalog& catalog, SnippetCache* cache = nullptr,
                                GatewayOptions options = {}) {
  BudgetLedger ledger(config.max_requests);
  SearchGateway gateway(backend, ledger, cache, options);
  return expand_static(config, gateway, catalog);
}

inline RunOutcome expand_with_pattern_mining(const RunConfig& config, SearchBackend& backend,
                                             const EntityCatalog& catalog, SnippetCache* cache = nullptr,
                                             GatewayOptions options = {}) {
  BudgetLedger ledger(config.max_requests);
  SearchGateway gateway(backend, ledger, cache, options);
  return expand_with_pattern_mining(config, gateway, catalog);
}

struct CurvePoint {
  std::uint64_t requests = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

/// (requests, |V|, |E|) after each step.
inline std::vector<CurvePoint> step_trace_to_curve(const RunReport& report) {
  std::vector<CurvePoint> out;
  out.reserve(report.trace.size());
  for (const auto& s : report.trace) out.push_back(CurvePoint{s.requests, s.nodes, s.edges});
  return out;
}

inline void write_trace_csv(const RunReport& report, std::ostream& out) {
  out << "step,kind,entity,new_nodes,new_edges,requests,nodes,edges\n";
  for (const auto& s : report.trace) {
    out << s.step << ',' << (s.kind == TraceKind::Expansion ? "expand" : "mine") << ','
        << csv::quoted(s.entity) << ',' << s.new_nodes << ',' << s.new_edges << ',' << s.requests
        << ',' << s.nodes << ',' << s.edges << '\n';
  }
}

inline void write_summary(const RunReport& report, std::ostream& out) {
  out << "mode: " << to_string(report.mode) << '\n'
      << "status: " << (report.incomplete ? "incomplete" : "complete") << '\n';
  if (!report.error.empty()) out << "error: " << report.error << '\n';
  out << "nodes: " << report.nodes_found << '\n'
      << "edges: " << report.edges_found << '\n'
      << "requests_charged: " << report.requests_charged << '\n'
      << "requests_used: " << report.requests_used << '\n'
      << "queries_issued: " << report.queries_issued << '\n'
      << "pair_queries: " << report.pair_queries << '\n'
      << "pair_requests: " << report.pair_requests << '\n'
      << "patterns_active: " << report.patterns_active << '\n'
      << "budget_exhausted: " << (report.budget_exhausted ? "yes" : "no") << '\n';
  if (report.mode == RunMode::PatternIteration) {
    out << "iterations_completed: " << report.iterations_completed << '\n';
    for (const auto& a : report.admitted) {
      out << "admitted[" << a.iteration << "]: " << csv::quoted(a.candidate.phrase) << " n=" << a.candidate.n
          << " m=" << a.candidate.m << " d=" << a.candidate.d << " score=" << a.score << '\n';
    }
  }
}

}  // namespace socnet
