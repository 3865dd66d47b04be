#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sgforest/bigint.hpp"

namespace sgforest {

// A gasket family SG_{d,b}: d is the dimension, b the side length in
// stage-n pieces. b = 2 is the ordinary gasket SG_d.
struct Family {
  int d = 2;
  int b = 2;

  int corner_count() const { return d + 1; }
  // Stage-n pieces per stage-(n+1) gasket.
  int copy_count() const;
  bool supported() const;
  // "SG_3", "SG_{2,4}"
  std::string name() const;

  friend bool operator==(const Family&, const Family&) = default;
};

// Throws std::invalid_argument for anything outside (d in 2..4, b = 2) or
// (d = 2, b in 2..4).
void require_supported(const Family& family);

// How stage n+1 is glued from stage-n copies. Junction labels are
// 0..junction_count-1; copies[i][c] is the label where corner c of copy i
// lands; outer[c] is the label of outer corner c.
struct CompositionSchema {
  Family family;
  int junction_count = 0;
  std::vector<std::vector<int>> copies;
  std::vector<int> outer;

  int corner_count() const { return family.corner_count(); }
  int copy_count() const { return static_cast<int>(copies.size()); }
};

// b = 2: copy i sits at outer corner i and its corner j lands on the
// vertex shared with copy j. d = 2, b >= 3: upward triangles of a b-row
// triangular arrangement, listed row by row from the base.
CompositionSchema composition_schema(const Family& family);

BigInt vertex_count(const Family& family, int n);
BigInt edge_count(const Family& family, int n);

// ln C(b+d-1, d) / ln b
double hausdorff_dimension(const Family& family);

struct ExplicitGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> corners;

  std::vector<int> degrees() const;
};

inline constexpr std::size_t kExplicitEdgeCap = 32;

class SizeCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Stage-n gasket built by instantiating the schema recursively. Throws
// SizeCapExceeded when the graph would have more than `edge_cap` edges.
ExplicitGraph explicit_graph(const Family& family, int n,
                             std::size_t edge_cap = kExplicitEdgeCap);

// K_k with every vertex marked as a corner.
ExplicitGraph complete_graph(int k);

// Text edge list: "vertices <n> corners <c1> ... <ck>" then one "u v" per line.
void write_edge_list(std::ostream& out, const ExplicitGraph& graph);
ExplicitGraph read_edge_list(std::istream& in);

}  // namespace sgforest
