// Two rounds of expansion with pattern mining on a corpus where most edges
// are only visible through "meets with" and "together with".

#include "socnet/corpus_generator.hpp"
#include "socnet/expansion_engine.hpp"
#include "socnet/replay_backend.hpp"

#include <iostream>

int main() {
  socnet::GeneratorParams params;
  params.rng_seed = 3;
  params.node_count = 60;
  params.edge_count = 90;
  params.snippets_per_edge = 3;
  params.patterns = {{"and", 2.0}, {"meets with", 1.0}, {"together with", 1.0}};
  const auto corpus = socnet::generate_corpus(params);

  socnet::EntityCatalog catalog;
  for (const auto& n : corpus.names) catalog.add(n);
  socnet::ReplayBackend backend(corpus.snippets);

  socnet::RunConfig config;
  config.mode = socnet::RunMode::PatternIteration;
  config.seeds = {socnet::Entity{corpus.seeds.front()}};
  config.tau = 1;
  config.h = 20;
  config.max_iterations = 3;
  const auto outcome = socnet::expand_with_pattern_mining(config, backend, catalog);
  socnet::write_summary(outcome.report, std::cout);
}
