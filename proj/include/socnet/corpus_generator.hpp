#pragma once

// Synthetic replay corpora with a known ground truth. Entities get
// two-word syllable names; every planted edge is rendered as
// `support` snippets "<filler> A <pattern> B <filler>", and noise
// snippets mention a single entity. Output is a pure function of the
// parameters (the RNG and every distribution are defined here, so bytes
// do not depend on the standard library in use).

#include "socnet/snippet.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

namespace socnet {

class GeneratorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PlannedEdge {
  std::size_t a = 0;  // node indices
  std::size_t b = 0;
  std::size_t support = 0;  // snippets; 0 = GeneratorParams::snippets_per_edge

  friend bool operator==(const PlannedEdge&, const PlannedEdge&) = default;
};

struct WeightedPhrase {
  std::string phrase;
  double weight = 1.0;
};

struct GeneratorParams {
  std::uint64_t rng_seed = 1;
  std::size_t node_count = 50;
  // Preferential attachment when `explicit_edges` is empty: each edge joins
  // a uniform node to one chosen with probability ~ (degree + 1)^exponent.
  std::size_t edge_count = 60;
  double attachment_exponent = 1.0;
  std::vector<PlannedEdge> explicit_edges;
  std::vector<WeightedPhrase> patterns{{"and", 1.0}};
  std::size_t snippets_per_edge = 2;
  std::size_t domain_count = 20;
  double noise_ratio = 0.0;  // noise snippets per planted snippet
  std::size_t seed_count = 1;

  void validate() const {
    if (node_count < 2) throw GeneratorError("node count must be >= 2");
    if (domain_count < 1) throw GeneratorError("domain count must be >= 1");
    if (snippets_per_edge < 1) throw GeneratorError("snippets per edge must be >= 1");
    if (!(noise_ratio >= 0)) throw GeneratorError("noise ratio must be >= 0");
    if (!(attachment_exponent >= 0)) throw GeneratorError("attachment exponent must be >= 0");
    if (seed_count < 1 || seed_count > node_count) throw GeneratorError("seed count must be in [1, nodes]");
    if (patterns.empty()) throw GeneratorError("pattern list is empty");
    for (const auto& p : patterns) {
      if (p.phrase.empty() || !(p.weight > 0)) throw GeneratorError("patterns need a phrase and a weight > 0");
    }
    if (explicit_edges.empty()) {
      const std::size_t possible = node_count * (node_count - 1) / 2;
      if (edge_count > possible) throw GeneratorError("edge count exceeds the number of node pairs");
    }
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& e : explicit_edges) {
      if (e.a >= node_count || e.b >= node_count) throw GeneratorError("edge endpoint out of range");
      if (e.a == e.b) throw GeneratorError("self-loop in edge list");
      if (!seen.insert(std::minmax(e.a, e.b)).second) throw GeneratorError("duplicate edge in edge list");
    }
  }
};

struct GeneratedCorpus {
  std::vector<std::string> names;  // node index -> name
  std::vector<PlannedEdge> edges;  // as planted, support resolved
  std::vector<Snippet> snippets;
  std::vector<std::string> seeds;
};

namespace gen {

/// Unbiased integer in [0, bound) by rejection.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::size_t pick_weighted(std::mt19937_64& rng, const std::vector<double>& weights, double total) {
  double x = unit(rng) * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (x < weights[i]) return i;
    x -= weights[i];
  }
  return weights.size() - 1;
}

template <class T>
void shuffle(std::mt19937_64& rng, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

inline constexpr std::array<std::string_view, 24> kSyllables = {
    "ka", "lo", "mi", "ren", "sa", "tor", "vel", "da", "ni", "bar", "qui", "zo",
    "fen", "gal", "hu", "jor", "ma", "pe", "ris", "ta", "um", "vin", "wes", "yar"};

inline std::string syllable_word(std::mt19937_64& rng, std::size_t syllables) {
  std::string w;
  for (std::size_t i = 0; i < syllables; ++i) w += kSyllables[uniform_below(rng, kSyllables.size())];
  w[0] = static_cast<char>(w[0] - 'a' + 'A');
  return w;
}

inline constexpr std::array<std::string_view, 6> kLeads = {
    "News and notes:", "Photos and video:", "Profile and interview:",
    "Latest and archived:", "Reports and reviews:", "Events and people:"};
inline constexpr std::array<std::string_view, 6> kTails = {
    "at the gala.", "during the summit.", "in the city.", "on Monday.", "last season.", "this week."};

}  // namespace gen

inline GeneratedCorpus generate_corpus(const GeneratorParams& params) {
  params.validate();
  std::mt19937_64 rng(params.rng_seed);
  GeneratedCorpus out;

  std::unordered_set<std::string> used;
  while (out.names.size() < params.node_count) {
    std::string name = gen::syllable_word(rng, 2) + ' ' + gen::syllable_word(rng, 2 + gen::uniform_below(rng, 2));
    if (used.insert(name).second) out.names.push_back(std::move(name));
  }

  if (!params.explicit_edges.empty()) {
    for (auto e : params.explicit_edges) {
      if (e.support == 0) e.support = params.snippets_per_edge;
      out.edges.push_back(e);
    }
  } else {
    std::vector<std::size_t> degree(params.node_count, 0);
    std::set<std::pair<std::size_t, std::size_t>> present;
    while (out.edges.size() < params.edge_count) {
      const std::size_t a = gen::uniform_below(rng, params.node_count);
      std::vector<double> w(params.node_count);
      double total = 0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = std::pow(static_cast<double>(degree[i] + 1), params.attachment_exponent);
        total += w[i];
      }
      const std::size_t b = gen::pick_weighted(rng, w, total);
      if (a == b || !present.insert(std::minmax(a, b)).second) continue;
      ++degree[a];
      ++degree[b];
      out.edges.push_back(PlannedEdge{a, b, params.snippets_per_edge});
    }
  }

  std::vector<double> pattern_weights;
  double pattern_total = 0;
  for (const auto& p : params.patterns) {
    pattern_weights.push_back(p.weight);
    pattern_total += p.weight;
  }

  std::size_t serial = 0;
  const auto make = [&](const std::string& middle) {
    const std::size_t site = gen::uniform_below(rng, params.domain_count);
    Snippet s;
    s.text = std::string(gen::kLeads[gen::uniform_below(rng, gen::kLeads.size())]) + ' ' + middle + ' ' +
             std::string(gen::kTails[gen::uniform_below(rng, gen::kTails.size())]);
    s.domain = "site" + std::to_string(site) + ".com";
    s.url = "http://www." + s.domain + "/p/" + std::to_string(serial++);
    return s;
  };

  for (const auto& e : out.edges) {
    for (std::size_t i = 0; i < e.support; ++i) {
      const auto& p = params.patterns[gen::pick_weighted(rng, pattern_weights, pattern_total)];
      const bool flip = gen::uniform_below(rng, 2) == 1;
      const auto& first = out.names[flip ? e.b : e.a];
      const auto& second = out.names[flip ? e.a : e.b];
      out.snippets.push_back(make(first + ' ' + p.phrase + ' ' + second));
    }
  }
  const auto noise = static_cast<std::size_t>(std::llround(params.noise_ratio * out.snippets.size()));
  for (std::size_t i = 0; i < noise; ++i) {
    out.snippets.push_back(make("a note on " + out.names[gen::uniform_below(rng, params.node_count)]));
  }
  gen::shuffle(rng, out.snippets);

  for (std::size_t i = 0; i < params.seed_count; ++i) out.seeds.push_back(out.names[i]);
  return out;
}

/// Edge list lines "a<TAB>b[<TAB>support]" with 0-based node indices;
/// blank lines and '#' comments skipped.
inline std::vector<PlannedEdge> read_planned_edges(std::istream& in) {
  std::vector<PlannedEdge> out;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::uint64_t> fields;
    std::size_t pos = 0;
    while (true) {
      const auto tab = line.find('\t', pos);
      const std::string field = line.substr(pos, tab == std::string::npos ? std::string::npos : tab - pos);
      std::size_t used = 0;
      std::uint64_t v = 0;
      try {
        v = std::stoull(field, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (field.empty() || used != field.size() || field[0] == '-') {
        throw GeneratorError("edge list line " + std::to_string(n) + ": expected non-negative integers");
      }
      fields.push_back(v);
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    if (fields.size() < 2 || fields.size() > 3) {
      throw GeneratorError("edge list line " + std::to_string(n) + ": expected 2 or 3 fields");
    }
    out.push_back(PlannedEdge{fields[0], fields[1], fields.size() == 3 ? fields[2] : 0});
  }
  return out;
}

struct CorpusFiles {
  std::filesystem::path corpus;
  std::filesystem::path catalog;
  std::filesystem::path seeds;
  std::filesystem::path truth;
};

inline CorpusFiles corpus_files(const std::string& prefix) {
  return CorpusFiles{prefix + ".tsv", prefix + ".catalog", prefix + ".seeds", prefix + ".truth.tsv"};
}

/// Writes corpus, catalog, seeds and ground truth ("a<TAB>b<TAB>support",
/// names ordered within and across lines).
inline CorpusFiles write_corpus(const GeneratedCorpus& corpus, const std::string& prefix) {
  const CorpusFiles files = corpus_files(prefix);
  const auto open = [](const std::filesystem::path& p) {
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    return f;
  };
  {
    auto f = open(files.corpus);
    write_records(f, corpus.snippets);
  }
  {
    auto f = open(files.catalog);
    for (const auto& n : corpus.names) f << n << '\n';
  }
  {
    auto f = open(files.seeds);
    for (const auto& s : corpus.seeds) f << s << '\n';
  }
  {
    std::vector<std::tuple<std::string, std::string, std::size_t>> rows;
    for (const auto& e : corpus.edges) {
      auto [x, y] = std::minmax(corpus.names[e.a], corpus.names[e.b]);
      rows.emplace_back(x, y, e.support);
    }
    std::sort(rows.begin(), rows.end());
    auto f = open(files.truth);
    for (const auto& [x, y, s] : rows) f << x << '\t' << y << '\t' << s << '\n';
  }
  return files;
}

}  // namespace socnet
