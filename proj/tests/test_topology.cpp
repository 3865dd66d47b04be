#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "sgforest/topology.hpp"

using namespace sgforest;

namespace {

const Family kSupported[] = {{2, 2}, {3, 2}, {4, 2}, {2, 3}, {2, 4}};

std::map<int, long> degree_census(const ExplicitGraph& g) {
  std::map<int, long> census;
  for (int deg : g.degrees()) ++census[deg];
  return census;
}

}  // namespace

TEST(Schema, SimplexLayouts) {
  for (int d = 2; d <= 4; ++d) {
    const auto s = composition_schema(Family{d, 2});
    EXPECT_EQ(s.copy_count(), d + 1);
    EXPECT_EQ(s.junction_count, (d + 1) * (d + 2) / 2);
    EXPECT_EQ(static_cast<int>(s.outer.size()), d + 1);
    for (int i = 0; i < s.copy_count(); ++i) {
      for (int j = i + 1; j < s.copy_count(); ++j) {
        std::set<int> a(s.copies[i].begin(), s.copies[i].end());
        int shared = 0;
        for (int l : s.copies[j]) shared += a.count(l);
        EXPECT_EQ(shared, 1) << "copies " << i << "," << j;
      }
    }
  }
}

TEST(Schema, TriangularLayouts) {
  const auto s3 = composition_schema(Family{2, 3});
  EXPECT_EQ(s3.copy_count(), 6);
  EXPECT_EQ(s3.junction_count, 10);
  std::map<int, int> use;
  for (const auto& c : s3.copies) {
    for (int l : c) ++use[l];
  }
  EXPECT_EQ(std::count_if(use.begin(), use.end(), [](auto& kv) { return kv.second == 3; }), 1);

  const auto s4 = composition_schema(Family{2, 4});
  EXPECT_EQ(s4.copy_count(), 10);
  EXPECT_EQ(s4.junction_count, 15);
}

TEST(Schema, OuterCornersBelongToOneCopy) {
  for (const Family& f : kSupported) {
    const auto s = composition_schema(f);
    for (int o : s.outer) {
      int owners = 0;
      for (const auto& c : s.copies) owners += std::count(c.begin(), c.end(), o);
      EXPECT_EQ(owners, 1) << f.name();
    }
  }
}

TEST(Schema, RejectsUnsupportedFamilies) {
  EXPECT_THROW(composition_schema(Family{3, 3}), std::invalid_argument);
  EXPECT_THROW(composition_schema(Family{5, 2}), std::invalid_argument);
  EXPECT_THROW(composition_schema(Family{2, 5}), std::invalid_argument);
  EXPECT_THROW(vertex_count(Family{3, 4}, 1), std::invalid_argument);
}

TEST(Counts, VerticesAndEdges) {
  EXPECT_EQ(vertex_count(Family{2, 2}, 3), 42);
  EXPECT_EQ(vertex_count(Family{2, 3}, 1), 10);
  EXPECT_EQ(vertex_count(Family{2, 4}, 1), 15);
  EXPECT_EQ(edge_count(Family{3, 2}, 1), 24);
  EXPECT_EQ(edge_count(Family{2, 3}, 2), 108);
  EXPECT_EQ(edge_count(Family{2, 4}, 1), 30);
  EXPECT_EQ(vertex_count(Family{2, 3}, 4), (7 * 1296 + 8) / 5);
  EXPECT_EQ(vertex_count(Family{2, 4}, 3), (4 * 1000 + 5) / 3);
}

TEST(Counts, HausdorffDimension) {
  EXPECT_NEAR(hausdorff_dimension(Family{2, 2}), 1.5849625007, 1e-9);
  EXPECT_DOUBLE_EQ(hausdorff_dimension(Family{3, 2}), 2.0);
  EXPECT_NEAR(hausdorff_dimension(Family{2, 4}), 1.6609640474, 1e-9);
}

TEST(ExplicitGraph, SmallStages) {
  const auto g21 = explicit_graph(Family{2, 2}, 1);
  EXPECT_EQ(g21.vertex_count, 6);
  EXPECT_EQ(g21.edges.size(), 9u);
  const auto g31 = explicit_graph(Family{3, 2}, 1);
  EXPECT_EQ(g31.vertex_count, 10);
  EXPECT_EQ(g31.edges.size(), 24u);
  const auto g23 = explicit_graph(Family{2, 3}, 1);
  EXPECT_EQ(g23.vertex_count, 10);
  EXPECT_EQ(g23.edges.size(), 18u);
}

TEST(ExplicitGraph, CountsMatchFormulasAndHaveNoLoopsOrDuplicates) {
  for (const Family& f : kSupported) {
    for (int n = 0; n <= 3; ++n) {
      if (edge_count(f, n) > 400) continue;
      const auto g = explicit_graph(f, n, 400);
      EXPECT_EQ(BigInt(g.vertex_count), vertex_count(f, n)) << f.name() << " n=" << n;
      EXPECT_EQ(BigInt(static_cast<long>(g.edges.size())), edge_count(f, n));
      std::set<std::pair<int, int>> seen;
      for (auto [u, v] : g.edges) {
        EXPECT_NE(u, v);
        EXPECT_TRUE(seen.insert(std::minmax(u, v)).second);
      }
      EXPECT_EQ(static_cast<int>(g.corners.size()), f.corner_count());
    }
  }
}

TEST(ExplicitGraph, SizeCap) {
  EXPECT_THROW(explicit_graph(Family{2, 3}, 2), SizeCapExceeded);
  EXPECT_THROW(explicit_graph(Family{4, 2}, 1), SizeCapExceeded);
  EXPECT_NO_THROW(explicit_graph(Family{2, 4}, 1));
}

TEST(ExplicitGraph, DegreeCensusSimplex) {
  for (int d = 2; d <= 4; ++d) {
    for (int n = 0; n <= 2; ++n) {
      const Family f{d, 2};
      if (edge_count(f, n) > 400) continue;
      const auto g = explicit_graph(f, n, 400);
      const auto census = degree_census(g);
      EXPECT_EQ(census.at(d), d + 1);
      const long rest = g.vertex_count - (d + 1);
      if (rest > 0) EXPECT_EQ(census.at(2 * d), rest);
      EXPECT_EQ(census.size(), rest > 0 ? 2u : 1u);
      for (int c : g.corners) EXPECT_EQ(g.degrees()[c], d);
    }
  }
}

TEST(ExplicitGraph, DegreeCensusTriangular) {
  for (int n = 1; n <= 2; ++n) {
    const auto g3 = explicit_graph(Family{2, 3}, n, 400);
    const long p6 = n == 1 ? 6 : 36;
    auto c3 = degree_census(g3);
    EXPECT_EQ(c3[6], (p6 - 1) / 5);
    EXPECT_EQ(c3[4], 6 * (p6 - 1) / 5);
    EXPECT_EQ(c3[2], 3);

    const auto g4 = explicit_graph(Family{2, 4}, n, 400);
    const long p10 = n == 1 ? 10 : 100;
    auto c4 = degree_census(g4);
    EXPECT_EQ(c4[6], (p10 - 1) / 3);
    EXPECT_EQ(c4[4], p10 - 1);
    EXPECT_EQ(c4[2], 3);
  }
}

TEST(ExplicitGraph, NextStageIsGluedCopies) {
  for (const Family& f : kSupported) {
    const auto s = composition_schema(f);
    const auto g0 = explicit_graph(f, 0, 400);
    const auto g1 = explicit_graph(f, 1, 400);
    const int identified = s.copy_count() * s.corner_count() - s.junction_count;
    EXPECT_EQ(g1.vertex_count, s.copy_count() * g0.vertex_count - identified) << f.name();
    EXPECT_EQ(g1.edges.size(), s.copy_count() * g0.edges.size());
  }
}

TEST(ExplicitGraph, CompleteGraph) {
  const auto k5 = complete_graph(5);
  EXPECT_EQ(k5.vertex_count, 5);
  EXPECT_EQ(k5.edges.size(), 10u);
  EXPECT_EQ(k5.corners.size(), 5u);
}

TEST(EdgeList, RoundTrip) {
  const auto g = explicit_graph(Family{2, 3}, 1);
  std::stringstream buf;
  write_edge_list(buf, g);
  EXPECT_EQ(buf.str().rfind("vertices 10 corners ", 0), 0u);
  const auto back = read_edge_list(buf);
  EXPECT_EQ(back.vertex_count, g.vertex_count);
  EXPECT_EQ(back.edges, g.edges);
  EXPECT_EQ(back.corners, g.corners);
}

TEST(EdgeList, RejectsMalformedInput) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_edge_list(in);
  };
  EXPECT_THROW(parse(""), std::invalid_argument);
  EXPECT_THROW(parse("vertex 3 corners 0\n"), std::invalid_argument);
  EXPECT_THROW(parse("vertices 3 corners 0\n0 3\n"), std::invalid_argument);
  EXPECT_THROW(parse("vertices 3 corners 0\n1 1\n"), std::invalid_argument);
  EXPECT_THROW(parse("vertices 3 corners 0\n0 1\n1 0\n"), std::invalid_argument);
  EXPECT_NO_THROW(parse("vertices 3 corners 0 1 2\n0 1\n1 2\n\n"));
}
