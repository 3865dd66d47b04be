#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "sgforest/deriver.hpp"
#include "sgforest/evaluator.hpp"
#include "sgforest/oracle.hpp"

using namespace sgforest;

namespace {

// Plain subset scan, small graphs only.
std::uint64_t brute_force_forests(const ExplicitGraph& g) {
  const std::size_t e = g.edges.size();
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (1ull << e); ++mask) {
    std::vector<int> parent(g.vertex_count);
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](int v) {
      while (parent[v] != v) v = parent[v];
      return v;
    };
    bool acyclic = true;
    for (std::size_t i = 0; i < e && acyclic; ++i) {
      if (!(mask >> i & 1)) continue;
      const int a = root(g.edges[i].first), b = root(g.edges[i].second);
      if (a == b) acyclic = false;
      parent[a] = b;
    }
    count += acyclic;
  }
  return count;
}

ExplicitGraph random_graph(std::mt19937& rng, int vertices, int edges) {
  ExplicitGraph g;
  g.vertex_count = vertices;
  std::set<std::pair<int, int>> seen;
  std::uniform_int_distribution<int> pick(0, vertices - 1);
  while (static_cast<int>(g.edges.size()) < edges) {
    int u = pick(rng), v = pick(rng);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (seen.insert({u, v}).second) g.edges.emplace_back(u, v);
  }
  g.corners = {0, 1, 2};
  return g;
}

ExplicitGraph cycle(int n) {
  ExplicitGraph g;
  g.vertex_count = n;
  for (int i = 0; i < n; ++i) g.edges.emplace_back(i, (i + 1) % n);
  g.corners = {0};
  return g;
}

}  // namespace

TEST(Oracle, SmallKnownGraphs) {
  for (int n = 3; n <= 12; ++n) {
    const BigInt expected = (BigInt(1) << n) - 1;
    EXPECT_EQ(count_forests_by_class(cycle(n)).total, expected);
    EXPECT_EQ(count_forests_memoized(cycle(n)), expected);
  }
  EXPECT_EQ(count_forests_by_class(complete_graph(6)).total, 2932);
  EXPECT_EQ(count_forests_memoized(complete_graph(6)), 2932);
  ExplicitGraph empty;
  empty.vertex_count = 4;
  EXPECT_EQ(count_forests_memoized(empty), 1);
}

TEST(Oracle, AgreesWithBruteForceOnRandomGraphs) {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 60; ++trial) {
    const int v = 4 + trial % 6;
    const int e = std::min(v * (v - 1) / 2, 5 + trial % 12);
    const auto g = random_graph(rng, v, e);
    const BigInt expected(static_cast<unsigned long>(brute_force_forests(g)));
    const auto classified = count_forests_by_class(g);
    EXPECT_EQ(classified.total, expected) << "trial " << trial;
    EXPECT_EQ(count_forests_memoized(g), expected) << "trial " << trial;
    BigInt sum = 0;
    for (const auto& [p, n] : classified.per_partition) sum += n;
    EXPECT_EQ(sum, expected);
  }
}

TEST(Oracle, MemoizedMatchesExhaustiveUpToCap) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = random_graph(rng, 10, 18 + trial % 7);
    EXPECT_EQ(count_forests_memoized(g), count_forests_by_class(g).total);
  }
}

TEST(Oracle, CapsAreEnforced) {
  const auto g = explicit_graph(Family{2, 4}, 1);
  EXPECT_THROW(count_forests_by_class(g), SizeCapExceeded);
  EXPECT_EQ(count_forests_memoized(g), 75908209);
  EXPECT_THROW(count_forests_memoized(g, 20), SizeCapExceeded);
}

TEST(Oracle, StageOneMatchesRecursion) {
  for (const Family f : {Family{2, 2}, Family{2, 3}, Family{3, 2}}) {
    const auto system = derive(composition_schema(f));
    const auto vectors = iterate(system, initial_vector(system), 1);
    const auto counted = count_forests_by_class(explicit_graph(f, 1));
    EXPECT_EQ(class_counts(counted, system.classes), vectors[1].counts) << f.name();
    EXPECT_EQ(counted.total, forest_count(vectors[1], system));
  }
}

TEST(Oracle, OrbitUniformityIsChecked) {
  ExplicitGraph path;
  path.vertex_count = 3;
  path.edges = {{0, 1}, {1, 2}};
  path.corners = {0, 1, 2};
  const auto classes = orbit_classes(enumerate_partitions(3));
  EXPECT_THROW(class_counts(count_forests_by_class(path), classes), std::logic_error);
}

TEST(Oracle, JsonCarriesTotal) {
  const auto j = to_json(count_forests_by_class(complete_graph(4)));
  EXPECT_EQ(j["total"], "38");
}
