#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "sgforest/partition.hpp"
#include "sgforest/topology.hpp"

using namespace sgforest;

namespace {

std::map<std::string, int> class_sizes(int k) {
  std::map<std::string, int> out;
  for (const auto& c : orbit_classes(enumerate_partitions(k))) out[c.name] = c.multiplicity;
  return out;
}

// Components of an undirected multigraph on vertices 0..n-1 by BFS.
// Returns the component id per vertex and whether the graph is a forest
// (edges == vertices - components).
std::pair<std::vector<int>, bool> components(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> comp(n, -1);
  int count = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> queue{s};
    comp[s] = count;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (int w : adj[queue[i]]) {
        if (comp[w] < 0) {
          comp[w] = count;
          queue.push_back(w);
        }
      }
    }
    ++count;
  }
  const bool forest = static_cast<int>(edges.size()) == n - count;
  return {comp, forest};
}

}  // namespace

TEST(Partition, CanonicalEncodingIgnoresBlockAndLabelOrder) {
  const std::vector<std::vector<int>> a = {{0, 1}, {2}};
  const std::vector<std::vector<int>> b = {{2}, {1, 0}};
  EXPECT_EQ(canonical_partition(a, 3), canonical_partition(b, 3));
  EXPECT_EQ(canonical_partition(a, 3).code(), canonical_partition(b, 3).code());
  EXPECT_EQ(canonical_partition(a, 3).to_string(), "{0,1}{2}");
}

TEST(Partition, SingleBlockAndSingletons) {
  const std::vector<std::vector<int>> one = {{0, 1, 2}};
  const std::vector<std::vector<int>> three = {{0}, {1}, {2}};
  EXPECT_EQ(canonical_partition(one, 3).block_count(), 1);
  EXPECT_EQ(class_name_for(canonical_partition(one, 3).block_signature()), "t");
  EXPECT_EQ(canonical_partition(three, 3).block_count(), 3);
  EXPECT_EQ(class_name_for(canonical_partition(three, 3).block_signature()), "h");
}

TEST(Partition, CanonicalRejectsBadBlocks) {
  const std::vector<std::vector<int>> overlap = {{0, 1}, {1, 2}};
  const std::vector<std::vector<int>> missing = {{0, 1}};
  const std::vector<std::vector<int>> unknown = {{0, 1, 2}, {3}};
  const std::vector<std::vector<int>> empty = {{0, 1, 2}, {}};
  EXPECT_THROW(canonical_partition(overlap, 3), std::invalid_argument);
  EXPECT_THROW(canonical_partition(missing, 3), std::invalid_argument);
  EXPECT_THROW(canonical_partition(unknown, 3), std::invalid_argument);
  EXPECT_THROW(canonical_partition(empty, 3), std::invalid_argument);
}

TEST(Partition, BellNumbers) {
  const std::uint64_t bell[] = {1, 2, 5, 15, 52, 203, 877, 4140};
  for (int k = 1; k <= 8; ++k) {
    EXPECT_EQ(bell_number(k), bell[k - 1]);
    const auto parts = enumerate_partitions(k);
    EXPECT_EQ(parts.size(), bell[k - 1]) << "k=" << k;
    std::set<SetPartition> unique(parts.begin(), parts.end());
    EXPECT_EQ(unique.size(), parts.size());
    EXPECT_TRUE(std::is_sorted(parts.begin(), parts.end()));
  }
  EXPECT_THROW(enumerate_partitions(0), std::out_of_range);
  EXPECT_THROW(enumerate_partitions(9), std::out_of_range);
}

TEST(Partition, OrbitClassesK3) {
  EXPECT_EQ(class_sizes(3), (std::map<std::string, int>{{"t", 1}, {"g", 3}, {"h", 1}}));
}

TEST(Partition, OrbitClassesK4) {
  EXPECT_EQ(class_sizes(4),
            (std::map<std::string, int>{{"t", 1}, {"g", 4}, {"h", 3}, {"p", 6}, {"q", 1}}));
}

TEST(Partition, OrbitClassesK5) {
  EXPECT_EQ(class_sizes(5), (std::map<std::string, int>{
                                {"t", 1}, {"g", 10}, {"h", 5}, {"p", 15}, {"q", 10}, {"r", 10}, {"s", 1}}));
  const auto classes = orbit_classes(enumerate_partitions(5));
  std::vector<std::string> order;
  for (const auto& c : classes) order.push_back(c.name);
  EXPECT_EQ(order, (std::vector<std::string>{"t", "g", "h", "p", "q", "r", "s"}));
  EXPECT_EQ(classes[1].block_signature, (std::vector<int>{3, 2}));
  EXPECT_EQ(classes[2].block_signature, (std::vector<int>{4, 1}));
}

TEST(Partition, OrbitMultiplicitiesSumToBell) {
  for (int k = 1; k <= 6; ++k) {
    int sum = 0;
    for (const auto& c : orbit_classes(enumerate_partitions(k))) sum += c.multiplicity;
    EXPECT_EQ(static_cast<std::uint64_t>(sum), bell_number(k));
  }
}

TEST(Partition, OrbitClassesRejectsIncompleteList) {
  auto parts = enumerate_partitions(4);
  parts.pop_back();
  EXPECT_THROW(orbit_classes(parts), std::invalid_argument);
}

TEST(Glue, IdentityGluingReturnsState) {
  const std::vector<int> map = {0, 1, 2, 3};
  for (const auto& p : enumerate_partitions(4)) {
    const GluedCopy copy{map, &p};
    const auto out = glue(std::span(&copy, 1), map);
    ASSERT_TRUE(out.has_value());
    EXPECT_EQ(*out, p);
  }
}

TEST(Glue, ThreeSpanningTreesCloseACircuit) {
  const auto schema = composition_schema(Family{2, 2});
  const auto t = SetPartition::from_rgs({0, 0, 0});
  std::vector<GluedCopy> copies;
  for (const auto& c : schema.copies) copies.push_back({c, &t});
  EXPECT_FALSE(glue(copies, schema.outer).has_value());
}

TEST(Glue, TwoTreesAndOneSplitCopyGiveOneOuterBlock) {
  const auto schema = composition_schema(Family{2, 2});
  const auto t = SetPartition::from_rgs({0, 0, 0});
  const auto parts = enumerate_partitions(3);
  // Sum over g orientations on copy 2 of the outcomes "outer corners all
  // joined"; two of the three orientations keep the gluing acyclic and
  // connect everything.
  int joined = 0;
  for (const auto& p : parts) {
    if (p.block_count() != 2) continue;
    std::vector<GluedCopy> copies = {{schema.copies[0], &t}, {schema.copies[1], &t},
                                     {schema.copies[2], &p}};
    const auto out = glue(copies, schema.outer);
    if (out && out->block_count() == 1) ++joined;
  }
  EXPECT_EQ(joined, 2);
}

TEST(Glue, RejectsMalformedInput) {
  const auto t = SetPartition::from_rgs({0, 0, 0});
  const std::vector<int> repeated = {0, 0, 1};
  const std::vector<int> good = {0, 1, 2};
  const std::vector<int> short_map = {0, 1};
  const std::vector<int> unknown_outer = {0, 7};
  const GluedCopy bad{repeated, &t};
  EXPECT_THROW(glue(std::span(&bad, 1), good), std::invalid_argument);
  const GluedCopy shorter{short_map, &t};
  EXPECT_THROW(glue(std::span(&shorter, 1), short_map), std::invalid_argument);
  const GluedCopy ok{good, &t};
  EXPECT_THROW(glue(std::span(&ok, 1), unknown_outer), std::invalid_argument);
}

// Every assignment of states to the three pieces of SG_2(1), checked
// against concrete forests: each block becomes a path on its corners and
// the union is tested for cycles by counting components.
TEST(Glue, AgreesWithEdgeLevelCheckOnAll125Assignments) {
  const auto schema = composition_schema(Family{2, 2});
  const auto parts = enumerate_partitions(3);
  int accepted = 0;
  for (std::size_t a = 0; a < parts.size(); ++a) {
    for (std::size_t b = 0; b < parts.size(); ++b) {
      for (std::size_t c = 0; c < parts.size(); ++c) {
        const SetPartition* states[3] = {&parts[a], &parts[b], &parts[c]};
        std::vector<GluedCopy> copies;
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < 3; ++i) {
          copies.push_back({schema.copies[i], states[i]});
          for (const auto& block : states[i]->blocks()) {
            for (std::size_t j = 1; j < block.size(); ++j) {
              edges.push_back({schema.copies[i][block[j - 1]], schema.copies[i][block[j]]});
            }
          }
        }
        const auto [comp, forest] = components(schema.junction_count, edges);
        const auto out = glue(copies, schema.outer);
        ASSERT_EQ(out.has_value(), forest) << a << b << c;
        if (!forest) continue;
        ++accepted;
        std::vector<int> ids;
        for (int o : schema.outer) ids.push_back(comp[o]);
        EXPECT_EQ(*out, SetPartition::from_assignment(ids));
      }
    }
  }
  EXPECT_EQ(accepted, 117);
}

TEST(Glue, EquivariantUnderJunctionRelabeling) {
  std::mt19937 rng(20240611);
  for (Family family : {Family{2, 2}, Family{2, 3}, Family{3, 2}, Family{4, 2}}) {
    const auto schema = composition_schema(family);
    const auto parts = enumerate_partitions(schema.corner_count());
    std::uniform_int_distribution<std::size_t> pick(0, parts.size() - 1);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<int> relabel(schema.junction_count);
      std::iota(relabel.begin(), relabel.end(), 0);
      std::shuffle(relabel.begin(), relabel.end(), rng);
      for (int& r : relabel) r = 3 * r + 5;

      std::vector<const SetPartition*> states;
      for (int i = 0; i < schema.copy_count(); ++i) states.push_back(&parts[pick(rng)]);
      std::vector<std::vector<int>> maps = schema.copies;
      for (auto& m : maps) {
        for (int& l : m) l = relabel[l];
      }
      std::vector<int> outer;
      for (int o : schema.outer) outer.push_back(relabel[o]);

      std::vector<GluedCopy> original, moved;
      for (int i = 0; i < schema.copy_count(); ++i) {
        original.push_back({schema.copies[i], states[i]});
        moved.push_back({maps[i], states[i]});
      }
      EXPECT_EQ(glue(original, schema.outer), glue(moved, outer));
    }
  }
}

TEST(Glue, InvariantUnderCornerPermutationOfACopy) {
  std::mt19937 rng(77);
  for (Family family : {Family{2, 2}, Family{2, 4}, Family{3, 2}, Family{4, 2}}) {
    const auto schema = composition_schema(family);
    const int k = schema.corner_count();
    const auto parts = enumerate_partitions(k);
    std::uniform_int_distribution<std::size_t> pick(0, parts.size() - 1);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<SetPartition> states, permuted_states;
      std::vector<std::vector<int>> maps;
      for (int i = 0; i < schema.copy_count(); ++i) {
        std::vector<int> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const SetPartition& s = parts[pick(rng)];
        states.push_back(s);
        permuted_states.push_back(s.permuted(perm));
        std::vector<int> m(k);
        for (int c = 0; c < k; ++c) m[perm[c]] = schema.copies[i][c];
        maps.push_back(m);
      }
      std::vector<GluedCopy> original, moved;
      for (int i = 0; i < schema.copy_count(); ++i) {
        original.push_back({schema.copies[i], &states[i]});
        moved.push_back({maps[i], &permuted_states[i]});
      }
      const auto a = glue(original, schema.outer);
      EXPECT_EQ(a, glue(moved, schema.outer));
      if (a) EXPECT_EQ(a->size(), k);
    }
  }
}
