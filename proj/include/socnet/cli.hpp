#pragma once

// Command-line front end. Subcommands: extract, mine-patterns, baseline,
// analyze, make-corpus. Settings come from an optional flat key=value file
// (--config) and from flags; a flag always beats the file.
//
// Exit status: 0 success (budget exhaustion included), 1 configuration or
// input error, 2 run aborted by a transport failure (partial outputs kept).

#include "socnet/analysis.hpp"
#include "socnet/baseline.hpp"
#include "socnet/corpus_generator.hpp"
#include "socnet/entity_catalog.hpp"
#include "socnet/expansion_engine.hpp"
#include "socnet/graph_store.hpp"
#include "socnet/http_backend.hpp"
#include "socnet/replay_backend.hpp"
#include "socnet/search_gateway.hpp"
#include "socnet/snippet_extractor.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace socnet::cli {

struct Setting {
  std::string_view key;   // config-file key; the flag is "--" + key with '_' -> '-' minus "_file"
  std::string_view help;
  bool boolean = false;
};

inline std::string flag_for(std::string_view key) {
  std::string k(key);
  if (k.size() > 5 && k.ends_with("_file")) k.resize(k.size() - 5);
  for (auto& c : k) {
    if (c == '_') c = '-';
  }
  return "--" + k;
}

inline constexpr Setting kRunSettings[] = {
    {"mode", "bf | prio | pattern-iter"},
    {"seeds_file", "seed entities, one name per line"},
    {"patterns_file", "initial query patterns (default: \"and\")"},
    {"match_patterns_file", "extra patterns used only for snippet matching"},
    {"catalog_file", "entity name catalog (default: corpus path with .catalog)"},
    {"corpus_file", "replay corpus (url, domain, text records)"},
    {"backend", "replay | live"},
    {"live", "allow the live backend to spend quota", true},
    {"endpoint", "live search endpoint URL"},
    {"cache_dir", "persistent query cache directory"},
    {"output_prefix", "prefix for every output file"},
    {"tau", "per-step edge threshold"},
    {"sigma", "pattern admission threshold"},
    {"alpha", "priority decay"},
    {"h", "heaviest edges used for pair queries"},
    {"k", "results requested per query"},
    {"max_requests", "request budget"},
    {"max_iterations", "pattern-mining iterations"},
};

inline constexpr Setting kBaselineSettings[] = {
    {"seeds_file", "seed entities, one name per line"},
    {"catalog_file", "entity name catalog (default: corpus path with .catalog)"},
    {"corpus_file", "replay corpus"},
    {"backend", "replay | live"},
    {"live", "allow the live backend to spend quota", true},
    {"endpoint", "live search endpoint URL"},
    {"cache_dir", "persistent query cache directory"},
    {"output_prefix", "prefix for every output file"},
    {"threshold", "co-occurrence threshold t in (0, 1)"},
    {"k", "results requested per query"},
    {"max_requests", "request budget"},
};

inline constexpr Setting kAnalyzeSettings[] = {
    {"graph_file", "edge list to analyse"},
    {"report", "dist | top | mi"},
    {"top_k", "relations listed by --report top"},
    {"mi_input_file", "lines \"category<TAB>phrase[<TAB>count]\" for --report mi"},
    {"no_smoothing", "disable add-one smoothing for MI", true},
    {"output_prefix", "prefix for every output file"},
};

inline constexpr Setting kCorpusSettings[] = {
    {"nodes", "number of entities"},
    {"edges", "edges drawn by preferential attachment"},
    {"edge_list_file", "explicit edges \"i<TAB>j[<TAB>support]\" (0-based)"},
    {"attachment_exponent", "preferential attachment exponent"},
    {"patterns_file", "connector phrases \"phrase[<TAB>weight]\""},
    {"snippets_per_edge", "snippets rendered per edge"},
    {"domains", "number of web domains"},
    {"noise_ratio", "single-entity snippets per planted snippet"},
    {"rng_seed", "generator seed"},
    {"seed_count", "seed entities written to the .seeds file"},
    {"output_prefix", "prefix for every output file"},
};

/// Resolved key -> value settings for one subcommand.
class Settings {
 public:
  bool has(const std::string& key) const { return values_.contains(key); }
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

  std::string get(const std::string& key, std::string fallback = {}) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  bool flag(const std::string& key) const {
    const auto v = get(key, "false");
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(key + " must be true or false");
  }

  std::int64_t integer(const std::string& key, std::int64_t fallback) const {
    if (!has(key)) return fallback;
    const auto v = get(key);
    std::int64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) throw ConfigError(key + " must be an integer, got '" + v + "'");
    return out;
  }

  /// Integer that must be >= `min`.
  std::uint64_t at_least(const std::string& key, std::int64_t fallback, std::int64_t min) const {
    const auto v = integer(key, fallback);
    if (v < min) throw ConfigError(key + " must be >= " + std::to_string(min));
    return static_cast<std::uint64_t>(v);
  }

  double real(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    const auto v = get(key);
    try {
      std::size_t used = 0;
      const double out = std::stod(v, &used);
      if (used == v.size()) return out;
    } catch (const std::exception&) {
    }
    throw ConfigError(key + " must be a number, got '" + v + "'");
  }

 private:
  std::map<std::string, std::string> values_;
};

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

/// Binds every setting to a CLI11 option and merges flags over the config.
class Binder {
 public:
  template <std::size_t N>
  Binder(CLI::App* sub, const Setting (&settings)[N]) : settings_(settings, settings + N) {
    sub->set_help_flag("--help", "print this help and exit");  // frees -h for the --h setting
    sub->add_option("--config", config_path_, "flat key=value configuration file");
    for (const auto& s : settings_) {
      auto& slot = values_[std::string(s.key)];
      if (s.boolean) {
        options_.push_back(sub->add_flag(flag_for(s.key), flags_[std::string(s.key)], std::string(s.help)));
      } else {
        options_.push_back(sub->add_option(flag_for(s.key), slot, std::string(s.help)));
      }
    }
  }

  Settings resolve() const {
    Settings out;
    if (!config_path_.empty()) {
      for (auto& [k, v] : read_config(config_path_)) out.set(k, v);
    }
    for (std::size_t i = 0; i < settings_.size(); ++i) {
      const std::string key(settings_[i].key);
      if (options_[i]->count() == 0) continue;
      if (settings_[i].boolean) {
        out.set(key, flags_.at(key) ? "true" : "false");
      } else {
        out.set(key, values_.at(key));
      }
    }
    return out;
  }

 private:
  /// Flat "key = value" file; '#' starts a comment line. Keys may also be
  /// written as their flag names. Only this subcommand's keys are accepted.
  std::map<std::string, std::string> read_config(const std::string& path) const {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::map<std::string, std::string> out;
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n) {
      const std::string t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      const auto eq = t.find('=');
      if (eq == std::string::npos) throw ConfigError(path + ":" + std::to_string(n) + ": expected key=value");
      const std::string key = trim(std::string_view(t).substr(0, eq));
      const Setting* match = nullptr;
      for (const auto& s : settings_) {
        if (key == s.key || key == flag_for(s.key) || "--" + key == flag_for(s.key)) match = &s;
      }
      if (!match) throw ConfigError(path + ":" + std::to_string(n) + ": unknown key '" + key + "'");
      out[std::string(match->key)] = trim(std::string_view(t).substr(eq + 1));
    }
    return out;
  }

  std::vector<Setting> settings_;
  std::string config_path_;
  std::map<std::string, std::string> values_;
  std::map<std::string, bool> flags_;
  std::vector<CLI::Option*> options_;
};

inline std::vector<std::string> read_lines(const std::filesystem::path& path, std::string_view what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + std::string(what) + " " + path.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!text::is_blank(line)) out.push_back(line);
  }
  return out;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

inline std::string require(const Settings& s, const std::string& key) {
  if (!s.has(key) || s.get(key).empty()) throw ConfigError("missing required setting " + flag_for(key));
  return s.get(key);
}

/// Everything a search-driven subcommand needs, owned in one place.
struct SearchContext {
  EntityCatalog catalog;
  std::vector<Entity> seeds;
  std::unique_ptr<SearchBackend> backend;
  std::unique_ptr<SnippetCache> cache;
};

inline SearchContext open_search(const Settings& s) {
  SearchContext ctx;
  const std::string backend = s.get("backend", "replay");
  const std::string corpus = s.get("corpus_file");
  std::string catalog_path = s.get("catalog_file");
  if (catalog_path.empty()) {
    if (corpus.empty()) throw ConfigError("missing required setting --catalog");
    catalog_path = std::filesystem::path(corpus).replace_extension(".catalog").string();
  }
  {
    std::ifstream in(catalog_path, std::ios::binary);
    if (!in) throw ConfigError("cannot open catalog " + catalog_path);
    try {
      ctx.catalog = load_catalog(in).catalog;
    } catch (const CatalogLoadError& e) {
      throw ConfigError(catalog_path + ": " + e.what());
    }
  }
  for (const auto& line : read_lines(require(s, "seeds_file"), "seeds file")) {
    const auto e = ctx.catalog.lookup(line);
    if (!e) throw ConfigError("seed not in catalog: " + line);
    if (std::find(ctx.seeds.begin(), ctx.seeds.end(), *e) == ctx.seeds.end()) ctx.seeds.push_back(*e);
  }
  if (backend == "replay") {
    if (corpus.empty()) throw ConfigError("missing required setting --corpus");
    std::ifstream in(corpus, std::ios::binary);
    if (!in) throw ConfigError("cannot open corpus " + corpus);
    try {
      ctx.backend = std::make_unique<ReplayBackend>(read_records(in));
    } catch (const CorpusParseError& e) {
      throw ConfigError(corpus + ": " + e.what());
    }
  } else if (backend == "live") {
    if (!s.flag("live")) throw ConfigError("the live backend spends search quota; pass --live to confirm");
    LiveBackendConfig config;
    if (s.has("endpoint")) config.endpoint = s.get("endpoint");
    auto live = std::make_unique<LiveSearchBackend>(config);
    if (!live->has_api_key()) throw ConfigError("SEARCH_API_KEY is not set");
    ctx.backend = std::move(live);
  } else {
    throw ConfigError("backend must be replay or live");
  }
  if (s.has("cache_dir") && !s.get("cache_dir").empty()) {
    ctx.cache = std::make_unique<SnippetCache>(s.get("cache_dir"));
  } else {
    ctx.cache = std::make_unique<SnippetCache>();
  }
  return ctx;
}

inline std::vector<Pattern> load_patterns(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open pattern file " + path);
  try {
    return read_patterns(in);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

inline void write_run_outputs(const RunOutcome& outcome, const std::string& prefix, std::ostream& out) {
  {
    auto f = open_output(prefix + ".edges");
    export_graph(outcome.graph, ExportFormat::EdgeList, f);
  }
  {
    auto f = open_output(prefix + ".trace.csv");
    write_trace_csv(outcome.report, f);
  }
  {
    auto f = open_output(prefix + ".summary.txt");
    write_summary(outcome.report, f);
  }
  if (outcome.report.mode == RunMode::PatternIteration) {
    auto f = open_output(prefix + ".patterns");
    write_patterns(f, outcome.patterns);
  }
  write_summary(outcome.report, out);
}

inline int run_extract(const Settings& s, std::optional<RunMode> forced, std::ostream& out) {
  RunConfig config;
  const std::string mode = forced ? to_string(*forced) : s.get("mode", "bf");
  if (mode == "bf") {
    config.mode = RunMode::BreadthFirst;
  } else if (mode == "prio") {
    config.mode = RunMode::Priority;
  } else if (mode == "pattern-iter") {
    config.mode = RunMode::PatternIteration;
  } else {
    throw ConfigError("mode must be bf, prio or pattern-iter");
  }
  config.tau = s.at_least("tau", 2, 1);
  config.sigma = s.at_least("sigma", 5, 1);
  config.h = s.at_least("h", 100, 1);
  config.k = s.at_least("k", 200, 1);
  config.max_requests = s.at_least("max_requests", 200'000, 1);
  config.max_iterations = s.at_least("max_iterations", 2, 1);
  config.alpha = s.real("alpha", 0.0);
  if (!(config.alpha >= 0)) throw ConfigError("alpha must be >= 0");
  if (s.has("patterns_file")) config.initial_patterns = load_patterns(s.get("patterns_file"));
  if (s.has("match_patterns_file")) config.match_patterns = load_patterns(s.get("match_patterns_file"));

  SearchContext ctx = open_search(s);
  config.seeds = ctx.seeds;
  config.validate(ctx.catalog);
  BudgetLedger ledger(config.max_requests);
  SearchGateway gateway(*ctx.backend, ledger, ctx.cache.get());
  const RunOutcome outcome = config.mode == RunMode::PatternIteration
                                 ? expand_with_pattern_mining(config, gateway, ctx.catalog)
                                 : expand_static(config, gateway, ctx.catalog);
  write_run_outputs(outcome, s.get("output_prefix", "out"), out);
  return outcome.report.incomplete ? 2 : 0;
}

inline int run_baseline(const Settings& s, std::ostream& out) {
  BaselineConfig config;
  config.threshold = s.real("threshold", 0.1);
  config.k = s.at_least("k", 200, 1);
  config.max_requests = s.at_least("max_requests", 200'000, 1);
  if (!(config.threshold > 0 && config.threshold < 1)) throw ConfigError("threshold must be in (0, 1)");
  SearchContext ctx = open_search(s);
  config.seeds = ctx.seeds;
  BudgetLedger ledger(config.max_requests);
  SearchGateway gateway(*ctx.backend, ledger, ctx.cache.get());
  const RunOutcome outcome = baseline_pairwise(config, gateway, ctx.catalog);
  write_run_outputs(outcome, s.get("output_prefix", "out"), out);
  return outcome.report.incomplete ? 2 : 0;
}

inline void print_distribution(std::ostream& out, std::string_view label, const DistributionSummary& d) {
  out << label << ": n=" << d.population;
  if (!d.empty()) out << " mean=" << d.mean << " sd=" << d.standard_deviation << " median=" << d.median;
  out << '\n';
}

inline int run_analyze(const Settings& s, std::ostream& out) {
  const std::string prefix = s.get("output_prefix", "out");
  const std::string report = s.get("report", "dist");
  if (report == "mi") {
    TermCategoryTable table;
    std::size_t n = 0;
    for (const auto& line : read_lines(require(s, "mi_input_file"), "MI input")) {
      ++n;
      const auto t1 = line.find('\t');
      if (t1 == std::string::npos) throw ConfigError("MI input line " + std::to_string(n) + ": expected category<TAB>phrase");
      const auto t2 = line.find('\t', t1 + 1);
      std::uint64_t count = 1;
      if (t2 != std::string::npos) {
        const std::string c = line.substr(t2 + 1);
        const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), count);
        if (ec != std::errc{} || ptr != c.data() + c.size()) {
          throw ConfigError("MI input line " + std::to_string(n) + ": bad count");
        }
      }
      add_phrase(table, line.substr(t1 + 1, t2 == std::string::npos ? std::string::npos : t2 - t1 - 1),
                 line.substr(0, t1), count);
    }
    if (table.total() == 0) throw ConfigError("MI input has no terms");
    auto f = open_output(prefix + ".mi.csv");
    write_mi_csv(mutual_information(table, !s.flag("no_smoothing")), f);
    out << "wrote " << prefix << ".mi.csv\n";
    return 0;
  }

  const std::string graph_path = require(s, "graph_file");
  std::ifstream in(graph_path, std::ios::binary);
  if (!in) throw ConfigError("cannot open graph " + graph_path);
  SocialGraph graph;
  try {
    graph = import_edge_list(in);
  } catch (const std::exception& e) {
    throw ConfigError(graph_path + ": " + e.what());
  }
  if (report == "dist") {
    const GraphSummary summary = summarize(graph);
    {
      auto f = open_output(prefix + ".degree_hist.csv");
      write_histogram_csv(summary.degree, "degree", f);
    }
    {
      auto f = open_output(prefix + ".weight_hist.csv");
      write_histogram_csv(summary.weight, "weight", f);
    }
    print_distribution(out, "degree", summary.degree);
    print_distribution(out, "weight", summary.weight);
    return 0;
  }
  if (report == "top") {
    const auto k = s.at_least("top_k", 15, 1);
    const auto relations = top_relations(graph, k);
    auto f = open_output(prefix + ".top.csv");
    write_relations_csv(relations, f);
    for (const auto& r : relations) out << r.rank << ". " << r.label() << " (" << r.weight << ")\n";
    return 0;
  }
  throw ConfigError("report must be dist, top or mi");
}

inline int run_make_corpus(const Settings& s, std::ostream& out) {
  GeneratorParams p;
  p.rng_seed = s.at_least("rng_seed", 1, 0);
  p.node_count = s.at_least("nodes", 50, 2);
  p.edge_count = s.at_least("edges", 60, 0);
  p.attachment_exponent = s.real("attachment_exponent", 1.0);
  p.snippets_per_edge = s.at_least("snippets_per_edge", 2, 1);
  p.domain_count = s.at_least("domains", 20, 1);
  p.noise_ratio = s.real("noise_ratio", 0.0);
  p.seed_count = s.at_least("seed_count", 1, 1);
  if (s.has("edge_list_file")) {
    std::ifstream in(s.get("edge_list_file"), std::ios::binary);
    if (!in) throw ConfigError("cannot open edge list " + s.get("edge_list_file"));
    p.explicit_edges = read_planned_edges(in);
    if (p.explicit_edges.empty()) throw ConfigError("edge list is empty");
  }
  if (s.has("patterns_file")) {
    p.patterns.clear();
    for (const auto& line : read_lines(s.get("patterns_file"), "pattern file")) {
      if (line[0] == '#') continue;
      const auto tab = line.find('\t');
      WeightedPhrase w{line.substr(0, tab), 1.0};
      if (tab != std::string::npos) {
        try {
          w.weight = std::stod(line.substr(tab + 1));
        } catch (const std::exception&) {
          throw ConfigError("pattern weight must be a number: " + line);
        }
      }
      p.patterns.push_back(std::move(w));
    }
  }
  const GeneratedCorpus corpus = generate_corpus(p);
  const CorpusFiles files = write_corpus(corpus, s.get("output_prefix", "corpus"));
  out << "entities: " << corpus.names.size() << '\n'
      << "edges: " << corpus.edges.size() << '\n'
      << "snippets: " << corpus.snippets.size() << '\n'
      << "corpus: " << files.corpus.string() << '\n';
  return 0;
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Weighted social graph extraction from search snippets", "socnet"};
  app.require_subcommand(1);
  app.set_help_flag("-h,--help", "print this help and exit");
  auto* extract = app.add_subcommand("extract", "expand a graph from seeds (bf, prio or pattern-iter)");
  auto* mine = app.add_subcommand("mine-patterns", "iterative expansion with pattern mining");
  auto* baseline = app.add_subcommand("baseline", "pairwise co-occurrence baseline");
  auto* analyze = app.add_subcommand("analyze", "distributions, top relations, MI");
  auto* make = app.add_subcommand("make-corpus", "generate a synthetic replay corpus");
  Binder extract_bind(extract, kRunSettings);
  Binder mine_bind(mine, kRunSettings);
  Binder baseline_bind(baseline, kBaselineSettings);
  Binder analyze_bind(analyze, kAnalyzeSettings);
  Binder make_bind(make, kCorpusSettings);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    if (extract->parsed()) return run_extract(extract_bind.resolve(), std::nullopt, out);
    if (mine->parsed()) return run_extract(mine_bind.resolve(), RunMode::PatternIteration, out);
    if (baseline->parsed()) return run_baseline(baseline_bind.resolve(), out);
    if (analyze->parsed()) return run_analyze(analyze_bind.resolve(), out);
    if (make->parsed()) return run_make_corpus(make_bind.resolve(), out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const GeneratorError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "aborted: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  std::vector<const char*> argv{"socnet"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace socnet::cli
