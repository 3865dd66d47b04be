#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include <json.hpp>

#include "sgforest/bigint.hpp"
#include "sgforest/partition.hpp"
#include "sgforest/topology.hpp"

namespace sgforest {

inline constexpr std::size_t kExhaustiveEdgeCap = 24;
inline constexpr std::size_t kMemoizedEdgeCap = 32;

// Spanning forests of a graph, bucketed by the partition their trees induce
// on the marked corners.
struct ClassifiedForestCount {
  BigInt total;
  std::map<SetPartition, BigInt> per_partition;
};

// Visits every acyclic edge subset. Throws SizeCapExceeded above `edge_cap`
// edges.
ClassifiedForestCount count_forests_by_class(const ExplicitGraph& graph,
                                             std::size_t edge_cap = kExhaustiveEdgeCap);

// Total forest count by deletion-contraction with memoization on the
// reduced multigraph. Throws SizeCapExceeded above `edge_cap` edges.
BigInt count_forests_memoized(const ExplicitGraph& graph,
                              std::size_t edge_cap = kMemoizedEdgeCap);

// Count per symmetry class, read from the class representative. Throws
// std::logic_error when orbit members disagree.
std::vector<BigInt> class_counts(const ClassifiedForestCount& counts,
                                 std::span<const SymmetryClass> classes);

nlohmann::ordered_json to_json(const ClassifiedForestCount& counts);

}  // namespace sgforest
