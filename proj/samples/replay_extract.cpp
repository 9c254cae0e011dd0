// Generates a small corpus in memory, expands it breadth-first and with the
// priority frontier, and prints both graphs' sizes and the heaviest edges.

#include "socnet/analysis.hpp"
#include "socnet/corpus_generator.hpp"
#include "socnet/expansion_engine.hpp"
#include "socnet/replay_backend.hpp"

#include <iostream>

int main() {
  socnet::GeneratorParams params;
  params.rng_seed = 7;
  params.node_count = 80;
  params.edge_count = 120;
  const auto corpus = socnet::generate_corpus(params);

  socnet::EntityCatalog catalog;
  for (const auto& n : corpus.names) catalog.add(n);
  socnet::ReplayBackend backend(corpus.snippets);

  for (auto mode : {socnet::RunMode::BreadthFirst, socnet::RunMode::Priority}) {
    socnet::RunConfig config;
    config.mode = mode;
    config.seeds = {socnet::Entity{corpus.seeds.front()}};
    config.max_requests = 40;
    const auto outcome = socnet::expand_static(config, backend, catalog);
    std::cout << socnet::to_string(mode) << ": " << outcome.report.nodes_found << " nodes, "
              << outcome.report.edges_found << " edges, " << outcome.report.requests_used << " requests\n";
    for (const auto& r : socnet::top_relations(outcome.graph, 3)) {
      std::cout << "  " << r.rank << ". " << r.label() << " (" << r.weight << ")\n";
    }
  }
}
