#include "sgforest/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>

#include "sgforest/disjoint_set.hpp"

namespace sgforest {

namespace {

void check_cap(const ExplicitGraph& graph, std::size_t cap) {
  if (graph.edges.size() > cap) {
    throw SizeCapExceeded("graph has " + std::to_string(graph.edges.size()) +
                          " edges, oracle cap is " + std::to_string(cap));
  }
}

class Enumerator {
 public:
  explicit Enumerator(const ExplicitGraph& g) : g_(g), dsu_(g.vertex_count) {}

  std::unordered_map<std::uint32_t, std::uint64_t> run() {
    visit(0);
    return std::move(tally_);
  }

 private:
  void visit(std::size_t i) {
    if (i == g_.edges.size()) {
      ++tally_[corner_code()];
      return;
    }
    visit(i + 1);
    const auto [u, v] = g_.edges[i];
    if (dsu_.unite(u, v)) {
      visit(i + 1);
      dsu_.undo();
    }
  }

  // Restricted growth string of the corners' components, 4 bits per corner.
  std::uint32_t corner_code() const {
    int roots[kMaxPartitionLabels];
    std::uint32_t code = 0;
    int blocks = 0;
    for (std::size_t c = 0; c < g_.corners.size(); ++c) {
      const int r = dsu_.find(g_.corners[c]);
      int b = 0;
      while (b < blocks && roots[b] != r) ++b;
      if (b == blocks) roots[blocks++] = r;
      code |= static_cast<std::uint32_t>(b) << (4 * c);
    }
    return code;
  }

  const ExplicitGraph& g_;
  RollbackDisjointSet dsu_;
  std::unordered_map<std::uint32_t, std::uint64_t> tally_;
};

// Multigraph as (u < v) -> multiplicity.
using Multigraph = std::map<std::pair<int, int>, int>;

class DeletionContraction {
 public:
  BigInt count(const Multigraph& g) {
    Multigraph h = normalize(g);
    if (h.empty()) return 1;
    const std::string key = encode(h);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    BigInt result = expand(h);
    memo_.emplace(key, result);
    return result;
  }

 private:
  // Vertices renumbered 0.. in increasing order; isolated vertices vanish.
  static Multigraph normalize(const Multigraph& g) {
    std::vector<int> ids;
    for (const auto& [e, m] : g) {
      ids.push_back(e.first);
      ids.push_back(e.second);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto index = [&](int v) {
      return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
    };
    Multigraph out;
    for (const auto& [e, m] : g) out[{index(e.first), index(e.second)}] = m;
    return out;
  }

  static std::string encode(const Multigraph& g) {
    std::string key;
    key.reserve(g.size() * 3);
    for (const auto& [e, m] : g) {
      key.push_back(static_cast<char>(e.first));
      key.push_back(static_cast<char>(e.second));
      key.push_back(static_cast<char>(m));
    }
    return key;
  }

  BigInt expand(const Multigraph& g) {
    std::map<int, std::vector<std::pair<int, int>>> adj;  // vertex -> (neighbor, multiplicity)
    for (const auto& [e, m] : g) {
      adj[e.first].push_back({e.second, m});
      adj[e.second].push_back({e.first, m});
    }
    int v = adj.begin()->first;
    for (const auto& [x, nbrs] : adj) {
      if (nbrs.size() < adj[v].size()) v = x;
    }
    const auto [u, m] = adj[v].front();
    const std::pair<int, int> uv = std::minmax(u, v);

    Multigraph deleted = g;
    deleted.erase(uv);
    // A vertex hanging by one parallel class: forests there use none or one
    // of its m edges.
    if (adj[v].size() == 1) return BigInt(m + 1) * count(deleted);

    Multigraph contracted;
    for (const auto& [e, mult] : deleted) {
      int a = e.first == v ? u : e.first;
      int b = e.second == v ? u : e.second;
      if (a > b) std::swap(a, b);
      contracted[{a, b}] += mult;
    }
    return count(deleted) + BigInt(m) * count(contracted);
  }

  std::unordered_map<std::string, BigInt> memo_;
};

}  // namespace

ClassifiedForestCount count_forests_by_class(const ExplicitGraph& graph, std::size_t edge_cap) {
  check_cap(graph, edge_cap);
  if (graph.corners.empty() || graph.corners.size() > static_cast<std::size_t>(kMaxPartitionLabels)) {
    throw std::invalid_argument("oracle needs 1.." + std::to_string(kMaxPartitionLabels) +
                                " marked corners");
  }
  ClassifiedForestCount out;
  out.total = 0;
  for (const auto& [code, n] : Enumerator(graph).run()) {
    std::vector<std::uint8_t> rgs(graph.corners.size());
    for (std::size_t c = 0; c < rgs.size(); ++c) rgs[c] = (code >> (4 * c)) & 0xF;
    BigInt count(static_cast<unsigned long>(n));
    out.per_partition.emplace(SetPartition::from_rgs(std::move(rgs)), count);
    out.total += count;
  }
  return out;
}

BigInt count_forests_memoized(const ExplicitGraph& graph, std::size_t edge_cap) {
  check_cap(graph, edge_cap);
  Multigraph g;
  for (auto [u, v] : graph.edges) {
    if (u == v) continue;  // a loop is never in a forest
    if (u > v) std::swap(u, v);
    ++g[{u, v}];
  }
  return DeletionContraction().count(g);
}

std::vector<BigInt> class_counts(const ClassifiedForestCount& counts,
                                 std::span<const SymmetryClass> classes) {
  auto lookup = [&](const SetPartition& p) -> BigInt {
    auto it = counts.per_partition.find(p);
    return it == counts.per_partition.end() ? BigInt(0) : it->second;
  };
  std::vector<BigInt> out;
  for (const auto& cls : classes) {
    const BigInt rep = lookup(cls.representative);
    for (const auto& member : cls.members) {
      if (lookup(member) != rep) {
        throw std::logic_error("class " + cls.name + " is not uniform: " + member.to_string() +
                               " differs from " + cls.representative.to_string());
      }
    }
    out.push_back(rep);
  }
  return out;
}

nlohmann::ordered_json to_json(const ClassifiedForestCount& counts) {
  nlohmann::ordered_json j;
  j["total"] = to_decimal(counts.total);
  auto parts = nlohmann::ordered_json::array();
  for (const auto& [p, n] : counts.per_partition) {
    parts.push_back({{"partition", p.to_string()}, {"count", to_decimal(n)}});
  }
  j["per_partition"] = parts;
  return j;
}

}  // namespace sgforest
