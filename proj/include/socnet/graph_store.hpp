#pragma once

#include "socnet/entity_catalog.hpp"
#include "socnet/snippet_extractor.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace socnet {

struct WeightedEdge {
  EntityPair pair;
  std::uint64_t weight = 0;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Undirected weighted graph keyed by canonical entity names. No self-loops,
/// weights strictly positive, both endpoints always present as nodes.
class SocialGraph {
 public:
  /// Returns true if the node was not present before.
  bool add_node(std::string_view name) {
    if (ids_.contains(std::string(name))) return false;
    ids_.emplace(std::string(name), static_cast<std::uint32_t>(names_.size()));
    names_.emplace_back(name);
    degrees_.push_back(0);
    return true;
  }

  bool has_node(std::string_view name) const { return ids_.contains(std::string(name)); }

  std::size_t node_count() const { return names_.size(); }
  std::size_t edge_count() const { return weights_.size(); }

  std::size_t degree(std::string_view name) const {
    const auto it = ids_.find(std::string(name));
    return it == ids_.end() ? 0 : degrees_[it->second];
  }

  std::optional<std::uint64_t> weight(std::string_view a, std::string_view b) const {
    const auto key = edge_key(a, b);
    if (!key) return std::nullopt;
    const auto it = weights_.find(*key);
    if (it == weights_.end()) return std::nullopt;
    return it->second;
  }

  bool has_edge(std::string_view a, std::string_view b) const { return weight(a, b).has_value(); }

  /// Inserts a new edge (adding endpoints) or adds to an existing weight.
  /// Returns true when the edge is new.
  bool add_weight(std::string_view a, std::string_view b, std::uint64_t w) {
    if (a == b) throw std::invalid_argument("self-loop on " + std::string(a));
    if (w == 0) throw std::invalid_argument("edge weight must be positive");
    add_node(a);
    add_node(b);
    const auto key = *edge_key(a, b);
    const auto [it, inserted] = weights_.try_emplace(key, 0);
    it->second += w;
    if (inserted) {
      ++degrees_[key >> 32];
      ++degrees_[key & 0xffffffffU];
    }
    return inserted;
  }

  /// Nodes in insertion order.
  const std::vector<std::string>& nodes() const { return names_; }

  /// All edges, ordered by pair.
  std::vector<WeightedEdge> edges() const {
    std::vector<WeightedEdge> out;
    out.reserve(weights_.size());
    for (const auto& [key, w] : weights_) {
      out.push_back(WeightedEdge{EntityPair::of(names_[key >> 32], names_[key & 0xffffffffU]), w});
    }
    std::sort(out.begin(), out.end(),
              [](const WeightedEdge& x, const WeightedEdge& y) { return x.pair < y.pair; });
    return out;
  }

  std::vector<std::size_t> degrees() const { return degrees_; }

 private:
  std::optional<std::uint64_t> edge_key(std::string_view a, std::string_view b) const {
    const auto ia = ids_.find(std::string(a));
    const auto ib = ids_.find(std::string(b));
    if (ia == ids_.end() || ib == ids_.end()) return std::nullopt;
    std::uint64_t x = ia->second;
    std::uint64_t y = ib->second;
    if (y < x) std::swap(x, y);
    return (x << 32) | y;
  }

  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<std::string> names_;
  std::vector<std::size_t> degrees_;
  std::unordered_map<std::uint64_t, std::uint64_t> weights_;
};

struct MergeResult {
  std::vector<Entity> new_nodes;
  std::vector<WeightedEdge> new_edges;
  std::vector<EntityPair> reinforced;
};

/// Evidence for a pair not yet in the graph enters only with count >= tau;
/// evidence for an existing edge always accumulates. Threshold is applied
/// to this batch's counts, never to lifetime totals.
inline MergeResult merge_evidence(SocialGraph& graph, std::span<const EdgeEvidence> evidence,
                                  std::uint64_t tau) {
  if (tau < 1) throw std::invalid_argument("tau must be >= 1");
  MergeResult result;
  for (const auto& e : evidence) {
    if (e.count == 0 || e.pair.first == e.pair.second) continue;
    if (graph.has_edge(e.pair.first, e.pair.second)) {
      graph.add_weight(e.pair.first, e.pair.second, e.count);
      result.reinforced.push_back(e.pair);
      continue;
    }
    if (e.count < tau) continue;
    for (const auto* name : {&e.pair.first, &e.pair.second}) {
      if (!graph.has_node(*name)) result.new_nodes.push_back(Entity{*name});
    }
    graph.add_weight(e.pair.first, e.pair.second, e.count);
    result.new_edges.push_back(WeightedEdge{e.pair, e.count});
  }
  return result;
}

/// The h heaviest edges; ties by pair order. h larger than |E| returns all.
inline std::vector<WeightedEdge> top_edges(const SocialGraph& graph, std::size_t h) {
  if (h < 1) throw std::invalid_argument("h must be >= 1");
  auto all = graph.edges();
  const auto heavier = [](const WeightedEdge& x, const WeightedEdge& y) {
    if (x.weight != y.weight) return x.weight > y.weight;
    return x.pair < y.pair;
  };
  const std::size_t keep = std::min(h, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(), heavier);
  all.resize(keep);
  return all;
}

enum class ExportFormat { EdgeList, GraphML, Dot };

namespace detail {

inline std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

inline std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace detail

/// EdgeList: "a<TAB>b<TAB>w" per edge, a < b, lines sorted; isolated nodes
/// are omitted. GraphML and DOT include every node.
inline void export_graph(const SocialGraph& graph, ExportFormat format, std::ostream& out) {
  const auto edges = graph.edges();
  switch (format) {
    case ExportFormat::EdgeList:
      for (const auto& e : edges) out << e.pair.first << '\t' << e.pair.second << '\t' << e.weight << '\n';
      break;
    case ExportFormat::GraphML: {
      out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
          << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
          << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n"
          << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
      auto names = graph.nodes();
      std::sort(names.begin(), names.end());
      for (const auto& n : names) out << "    <node id=\"" << detail::xml_escape(n) << "\"/>\n";
      for (const auto& e : edges) {
        out << "    <edge source=\"" << detail::xml_escape(e.pair.first) << "\" target=\""
            << detail::xml_escape(e.pair.second) << "\"><data key=\"weight\">" << e.weight
            << "</data></edge>\n";
      }
      out << "  </graph>\n</graphml>\n";
      break;
    }
    case ExportFormat::Dot: {
      out << "graph G {\n";
      auto names = graph.nodes();
      std::sort(names.begin(), names.end());
      for (const auto& n : names) out << "  " << detail::dot_quote(n) << ";\n";
      for (const auto& e : edges) {
        out << "  " << detail::dot_quote(e.pair.first) << " -- " << detail::dot_quote(e.pair.second)
            << " [weight=" << e.weight << "];\n";
      }
      out << "}\n";
      break;
    }
  }
  if (!out) throw std::ios_base::failure("graph export: write failed");
}

/// Reads an EdgeList export back. Throws on malformed lines.
inline SocialGraph import_edge_list(std::istream& in) {
  SocialGraph graph;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      throw std::runtime_error("edge list line " + std::to_string(n) + ": expected 3 fields");
    }
    std::uint64_t w = 0;
    const char* first = line.data() + t2 + 1;
    const char* last = line.data() + line.size();
    const auto [ptr, ec] = std::from_chars(first, last, w);
    if (ec != std::errc{} || ptr != last || w == 0) {
      throw std::runtime_error("edge list line " + std::to_string(n) + ": bad weight");
    }
    const std::string a = line.substr(0, t1);
    const std::string b = line.substr(t1 + 1, t2 - t1 - 1);
    if (a.empty() || b.empty() || a == b) {
      throw std::runtime_error("edge list line " + std::to_string(n) + ": bad endpoints");
    }
    if (graph.has_edge(a, b)) {
      throw std::runtime_error("edge list line " + std::to_string(n) + ": duplicate edge");
    }
    graph.add_weight(a, b, w);
  }
  return graph;
}

}  // namespace socnet
