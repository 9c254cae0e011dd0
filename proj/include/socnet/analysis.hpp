#pragma once

#include "socnet/csv.hpp"
#include "socnet/graph_store.hpp"
#include "socnet/porter_stemmer.hpp"
#include "socnet/unicode_text.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace socnet {

struct DistributionSummary {
  std::size_t population = 0;
  double mean = 0;
  double standard_deviation = 0;  // population formula (divisor N)
  double median = 0;
  std::map<std::uint64_t, std::uint64_t> histogram;  // value -> frequency

  bool empty() const { return population == 0; }
};

inline DistributionSummary summarize_values(std::span<const std::uint64_t> values) {
  DistributionSummary s;
  s.population = values.size();
  if (values.empty()) return s;
  long double sum = 0;
  for (auto v : values) {
    sum += v;
    ++s.histogram[v];
  }
  const long double mean = sum / values.size();
  long double squares = 0;
  for (auto v : values) squares += (v - mean) * (v - mean);
  s.mean = static_cast<double>(mean);
  s.standard_deviation = static_cast<double>(std::sqrt(squares / values.size()));

  // Median straight from the histogram (values are already ordered there).
  const std::size_t lo = (values.size() - 1) / 2;
  const std::size_t hi = values.size() / 2;
  std::size_t seen = 0;
  std::uint64_t lo_value = 0;
  std::uint64_t hi_value = 0;
  bool have_lo = false;
  for (const auto& [value, freq] : s.histogram) {
    const std::size_t next = seen + freq;
    if (!have_lo && lo < next) {
      lo_value = value;
      have_lo = true;
    }
    if (hi < next) {
      hi_value = value;
      break;
    }
    seen = next;
  }
  s.median = (static_cast<double>(lo_value) + static_cast<double>(hi_value)) / 2.0;
  return s;
}

struct GraphSummary {
  DistributionSummary degree;  // over every node, isolated ones included
  DistributionSummary weight;  // over every edge
};

inline GraphSummary summarize(const SocialGraph& graph) {
  std::vector<std::uint64_t> degrees;
  degrees.reserve(graph.node_count());
  for (auto d : graph.degrees()) degrees.push_back(d);
  std::vector<std::uint64_t> weights;
  weights.reserve(graph.edge_count());
  for (const auto& e : graph.edges()) weights.push_back(e.weight);
  return GraphSummary{summarize_values(degrees), summarize_values(weights)};
}

inline void write_histogram_csv(const DistributionSummary& s, std::string_view value_name, std::ostream& out) {
  out << value_name << ",frequency\n";
  for (const auto& [v, f] : s.histogram) out << v << ',' << f << '\n';
}

struct RankedRelation {
  std::size_t rank = 0;
  EntityPair pair;
  std::uint64_t weight = 0;

  std::string label() const { return pair.first + " -- " + pair.second; }
};

inline std::vector<RankedRelation> top_relations(const SocialGraph& graph, std::size_t k) {
  std::vector<RankedRelation> out;
  std::size_t rank = 0;
  for (auto& e : top_edges(graph, k)) out.push_back(RankedRelation{++rank, std::move(e.pair), e.weight});
  return out;
}

inline void write_relations_csv(const std::vector<RankedRelation>& relations, std::ostream& out) {
  out << "rank,person1,person2,weight\n";
  for (const auto& r : relations) {
    out << r.rank << ',' << csv::quoted(r.pair.first) << ',' << csv::quoted(r.pair.second) << ','
        << r.weight << '\n';
  }
}

/// Joint counts of (term, category).
class TermCategoryTable {
 public:
  void add(const std::string& term, const std::string& category, std::uint64_t count = 1) {
    counts_[{term, category}] += count;
    categories_.insert(category);
    terms_.insert(term);
  }

  std::uint64_t count(const std::string& term, const std::string& category) const {
    const auto it = counts_.find({term, category});
    return it == counts_.end() ? 0 : it->second;
  }

  std::uint64_t term_total(const std::string& term) const {
    std::uint64_t sum = 0;
    for (const auto& c : categories_) sum += count(term, c);
    return sum;
  }

  std::uint64_t category_total(const std::string& category) const {
    std::uint64_t sum = 0;
    for (const auto& t : terms_) sum += count(t, category);
    return sum;
  }

  std::uint64_t total() const {
    std::uint64_t sum = 0;
    for (const auto& [key, c] : counts_) sum += c;
    return sum;
  }

  const std::set<std::string>& terms() const { return terms_; }
  const std::set<std::string>& categories() const { return categories_; }

 private:
  std::map<std::pair<std::string, std::string>, std::uint64_t> counts_;
  std::set<std::string> terms_;
  std::set<std::string> categories_;
};

/// Stems every word token of a phrase, lowercased.
inline std::vector<std::string> stemmed_terms(std::string_view phrase) {
  std::vector<std::string> out;
  for (auto& token : text::word_tokens(text::normalize(phrase))) out.push_back(porter_stem(token));
  return out;
}

/// Adds the stemmed terms of `phrase` to a category, `weight` times each.
inline void add_phrase(TermCategoryTable& table, std::string_view phrase, const std::string& category,
                       std::uint64_t weight = 1) {
  for (const auto& t : stemmed_terms(phrase)) table.add(t, category, weight);
}

struct TermScore {
  std::string term;
  std::string category;
  double score = 0;
};

/// Pointwise MI, log(P(t,c) / (P(t) P(c))), natural log. With smoothing
/// every cell of the term x category table gets +1 first. Ranked per
/// category (categories in name order), score descending, then term.
inline std::vector<TermScore> mutual_information(const TermCategoryTable& table, bool add_one_smoothing = true) {
  if (table.total() == 0) throw std::invalid_argument("term/category table is empty");
  const auto& terms = table.terms();
  const auto& categories = table.categories();
  const double extra = add_one_smoothing ? 1.0 : 0.0;
  const double cells = static_cast<double>(terms.size() * categories.size());
  const double n = static_cast<double>(table.total()) + extra * cells;

  std::vector<TermScore> out;
  for (const auto& c : categories) {
    const double pc = (static_cast<double>(table.category_total(c)) + extra * terms.size()) / n;
    std::vector<TermScore> ranked;
    for (const auto& t : terms) {
      if (table.term_total(t) == 0) continue;
      const double joint = static_cast<double>(table.count(t, c)) + extra;
      if (joint == 0) continue;  // log(0) without smoothing
      const double pt = (static_cast<double>(table.term_total(t)) + extra * categories.size()) / n;
      ranked.push_back(TermScore{t, c, std::log((joint / n) / (pt * pc))});
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const TermScore& a, const TermScore& b) { return a.score > b.score; });
    out.insert(out.end(), ranked.begin(), ranked.end());
  }
  return out;
}

inline void write_mi_csv(const std::vector<TermScore>& scores, std::ostream& out) {
  out << "term,category,score\n";
  out.precision(17);
  for (const auto& s : scores) {
    out << csv::quoted(s.term) << ',' << csv::quoted(s.category) << ',' << s.score << '\n';
  }
}

}  // namespace socnet
