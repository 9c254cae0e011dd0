#include "socnet/analysis.hpp"
#include "socnet/baseline.hpp"
#include "socnet/replay_backend.hpp"
#include "support/fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace socnet;
using namespace socnet::testing;

TEST(Distribution, SkewedSample) {
  const std::vector<std::uint64_t> v{1, 1, 2, 100};
  const auto s = summarize_values(v);
  EXPECT_EQ(s.population, 4u);
  EXPECT_DOUBLE_EQ(s.mean, 26.0);
  EXPECT_DOUBLE_EQ(s.median, 1.5);
  EXPECT_NEAR(s.standard_deviation, std::sqrt((625.0 * 2 + 576.0 + 5476.0) / 4), 1e-9);
  EXPECT_EQ(s.histogram, (std::map<std::uint64_t, std::uint64_t>{{1, 2}, {2, 1}, {100, 1}}));
}

TEST(Distribution, EmptyAndOdd) {
  EXPECT_TRUE(summarize_values({}).empty());
  const std::vector<std::uint64_t> v{7, 3, 5};
  EXPECT_DOUBLE_EQ(summarize_values(v).median, 5.0);
}

TEST(Distribution, MedianMatchesSortReference) {
  std::mt19937 rng(2);
  for (int run = 0; run < 200; ++run) {
    std::vector<std::uint64_t> v(1 + rng() % 30);
    for (auto& x : v) x = rng() % 10;
    auto sorted = v;
    std::sort(sorted.begin(), sorted.end());
    const double ref = (sorted[(v.size() - 1) / 2] + sorted[v.size() / 2]) / 2.0;
    const auto s = summarize_values(v);
    EXPECT_DOUBLE_EQ(s.median, ref);
    std::uint64_t total = 0;
    for (const auto& [value, f] : s.histogram) total += f;
    EXPECT_EQ(total, v.size());
  }
}

TEST(GraphSummary, SingleEdge) {
  SocialGraph g;
  g.add_weight("A", "B", 3);
  const auto s = summarize(g);
  EXPECT_EQ(s.degree.histogram, (std::map<std::uint64_t, std::uint64_t>{{1, 2}}));
  EXPECT_EQ(s.weight.histogram, (std::map<std::uint64_t, std::uint64_t>{{3, 1}}));
  std::ostringstream out;
  write_histogram_csv(s.degree, "degree", out);
  EXPECT_EQ(out.str(), "degree,frequency\n1,2\n");
}

TEST(TopRelations, RankedAndWritten) {
  SocialGraph g;
  g.add_weight("A", "B", 3);
  g.add_weight("C", "D", 9);
  const auto r = top_relations(g, 5);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].label(), "C -- D");
  EXPECT_EQ(r[1].rank, 2u);
  std::ostringstream out;
  write_relations_csv(r, out);
  EXPECT_EQ(out.str(), "rank,person1,person2,weight\n1,\"C\",\"D\",9\n2,\"A\",\"B\",3\n");
}

TEST(MutualInformation, TwoByTwoWithSmoothing) {
  TermCategoryTable t;
  t.add("x", "p", 8);
  t.add("x", "q", 2);
  t.add("y", "p", 2);
  t.add("y", "q", 8);
  const auto mi = mutual_information(t);
  ASSERT_EQ(mi.size(), 4u);
  EXPECT_EQ(mi[0].term, "x");
  EXPECT_EQ(mi[0].category, "p");
  EXPECT_NEAR(mi[0].score, std::log(1.5), 1e-12);
  EXPECT_NEAR(mi[1].score, std::log(0.5), 1e-12);
  EXPECT_EQ(mi[2].term, "y");
  EXPECT_EQ(mi[2].category, "q");
}

TEST(MutualInformation, UnsmoothedIsScaleInvariant) {
  TermCategoryTable a, b;
  const std::vector<std::tuple<std::string, std::string, std::uint64_t>> cells{
      {"x", "p", 3}, {"y", "p", 1}, {"x", "q", 2}, {"z", "q", 5}};
  for (const auto& [t, c, n] : cells) {
    a.add(t, c, n);
    b.add(t, c, n * 7);
  }
  const auto ma = mutual_information(a, false);
  const auto mb = mutual_information(b, false);
  ASSERT_EQ(ma.size(), mb.size());
  for (std::size_t i = 0; i < ma.size(); ++i) {
    EXPECT_EQ(ma[i].term, mb[i].term);
    EXPECT_NEAR(ma[i].score, mb[i].score, 1e-12);
  }
  EXPECT_THROW(mutual_information(TermCategoryTable{}), std::invalid_argument);
}

TEST(MutualInformation, PhrasesAreStemmed) {
  TermCategoryTable t;
  add_phrase(t, "Presidents meeting", "politics");
  EXPECT_EQ(t.count("presid", "politics"), 1u);
  EXPECT_EQ(t.count("meet", "politics"), 1u);
}

TEST(Baseline, OverlapAboveThresholdMakesEdge) {
  const auto cat = catalog_of({"Aa", "Bb", "Cc"});
  // Every "Bb" hit also names "Aa": overlap 2/2 = 1.
  ReplayBackend backend({snip("Aa with Bb"), snip("Bb with Aa"), snip("Aa alone"), snip("Cc alone")});
  BaselineConfig cfg;
  cfg.seeds = {Entity{"Aa"}};
  cfg.threshold = 0.5;
  const auto out = baseline_pairwise(cfg, backend, cat);
  EXPECT_EQ(out.graph.weight("Aa", "Bb"), 2u);
  EXPECT_FALSE(out.graph.has_node("Cc"));
}

TEST(Baseline, NoCooccurrenceNoEdge) {
  const auto cat = catalog_of({"Aa", "Bb"});
  ReplayBackend backend({snip("Aa alone"), snip("Bb alone")});
  BaselineConfig cfg;
  cfg.seeds = {Entity{"Aa"}};
  EXPECT_EQ(baseline_pairwise(cfg, backend, cat).graph.edge_count(), 0u);
  cfg.threshold = 1.0;
  EXPECT_THROW(baseline_pairwise(cfg, backend, cat), ConfigError);
}
