#include "sgforest/topology.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace sgforest {

int Family::copy_count() const {
  if (b == 2) return d + 1;
  return b * (b + 1) / 2;
}

bool Family::supported() const {
  return (b == 2 && d >= 2 && d <= 4) || (d == 2 && b >= 2 && b <= 4);
}

std::string Family::name() const {
  if (b == 2) return "SG_" + std::to_string(d);
  return "SG_{" + std::to_string(d) + "," + std::to_string(b) + "}";
}

void require_supported(const Family& family) {
  if (!family.supported()) {
    throw std::invalid_argument("unsupported gasket family d=" + std::to_string(family.d) +
                                " b=" + std::to_string(family.b) +
                                " (supported: b=2 with d=2..4, or d=2 with b=2..4)");
  }
}

namespace {

CompositionSchema simplex_schema(const Family& family) {
  const int k = family.d + 1;
  CompositionSchema schema;
  schema.family = family;
  // Outer corner i is label i; the vertex shared by copies i < j follows.
  std::vector<std::vector<int>> pair(k, std::vector<int>(k, -1));
  int next = 0;
  for (int i = 0; i < k; ++i) pair[i][i] = next++;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) pair[i][j] = pair[j][i] = next++;
  }
  schema.junction_count = next;
  for (int i = 0; i < k; ++i) {
    schema.copies.push_back(pair[i]);
    schema.outer.push_back(pair[i][i]);
  }
  return schema;
}

CompositionSchema triangular_schema(const Family& family) {
  const int b = family.b;
  CompositionSchema schema;
  schema.family = family;
  // Lattice point (row, col) with row + col <= b; row 0 is the base.
  std::vector<std::vector<int>> id(b + 1);
  int next = 0;
  for (int row = 0; row <= b; ++row) {
    for (int col = 0; col + row <= b; ++col) id[row].push_back(next++);
  }
  schema.junction_count = next;
  for (int row = 0; row < b; ++row) {
    for (int col = 0; col + row < b; ++col) {
      schema.copies.push_back({id[row][col], id[row][col + 1], id[row + 1][col]});
    }
  }
  schema.outer = {id[0][0], id[0][b], id[b][0]};
  return schema;
}

BigInt power(long base, int n) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(n));
  return r;
}

}  // namespace

CompositionSchema composition_schema(const Family& family) {
  require_supported(family);
  return family.b == 2 ? simplex_schema(family) : triangular_schema(family);
}

BigInt vertex_count(const Family& family, int n) {
  require_supported(family);
  if (n < 0) throw std::invalid_argument("stage must be non-negative");
  if (family.b == 2) {
    const long k = family.d + 1;
    return BigInt(k * (power(k, n) + 1) / 2);
  }
  const long b = family.b;
  return BigInt(((b + 4) * power(b * (b + 1) / 2, n) + 2 * (b + 1)) / (b + 2));
}

BigInt edge_count(const Family& family, int n) {
  require_supported(family);
  if (n < 0) throw std::invalid_argument("stage must be non-negative");
  if (family.b == 2) {
    const long k = family.d + 1;
    return BigInt(k * (k - 1) / 2 * power(k, n));
  }
  const long b = family.b;
  return BigInt(3 * power(b * (b + 1) / 2, n));
}

double hausdorff_dimension(const Family& family) {
  require_supported(family);
  // C(b+d-1, d)
  double binom = 1.0;
  for (int i = 1; i <= family.d; ++i) binom = binom * (family.b - 1 + i) / i;
  return std::log(binom) / std::log(static_cast<double>(family.b));
}

std::vector<int> ExplicitGraph::degrees() const {
  std::vector<int> deg(vertex_count, 0);
  for (auto [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

ExplicitGraph complete_graph(int k) {
  if (k < 1) throw std::invalid_argument("complete graph needs at least one vertex");
  ExplicitGraph g;
  g.vertex_count = k;
  for (int i = 0; i < k; ++i) {
    g.corners.push_back(i);
    for (int j = i + 1; j < k; ++j) g.edges.emplace_back(i, j);
  }
  return g;
}

ExplicitGraph explicit_graph(const Family& family, int n, std::size_t edge_cap) {
  require_supported(family);
  if (n < 0) throw std::invalid_argument("stage must be non-negative");
  const BigInt edges = edge_count(family, n);
  if (edges > BigInt(static_cast<unsigned long>(edge_cap))) {
    throw SizeCapExceeded(family.name() + "(" + std::to_string(n) + ") has " +
                          to_decimal(edges) + " edges, above the cap of " +
                          std::to_string(edge_cap));
  }

  const CompositionSchema schema = composition_schema(family);
  ExplicitGraph g = complete_graph(family.corner_count());
  for (int stage = 1; stage <= n; ++stage) {
    ExplicitGraph next;
    next.vertex_count = schema.junction_count;
    next.corners = schema.outer;
    std::vector<int> is_corner(g.vertex_count, -1);
    for (std::size_t c = 0; c < g.corners.size(); ++c) is_corner[g.corners[c]] = static_cast<int>(c);
    for (const auto& copy : schema.copies) {
      std::vector<int> place(g.vertex_count);
      for (int v = 0; v < g.vertex_count; ++v) {
        place[v] = is_corner[v] >= 0 ? copy[is_corner[v]] : next.vertex_count++;
      }
      for (auto [u, v] : g.edges) next.edges.emplace_back(place[u], place[v]);
    }
    g = std::move(next);
  }
  return g;
}

void write_edge_list(std::ostream& out, const ExplicitGraph& graph) {
  out << "vertices " << graph.vertex_count << " corners";
  for (int c : graph.corners) out << ' ' << c;
  out << '\n';
  for (auto [u, v] : graph.edges) out << u << ' ' << v << '\n';
}

ExplicitGraph read_edge_list(std::istream& in) {
  ExplicitGraph g;
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("edge list: missing header");
  std::istringstream header(line);
  std::string word;
  if (!(header >> word) || word != "vertices" || !(header >> g.vertex_count) ||
      !(header >> word) || word != "corners") {
    throw std::invalid_argument("edge list: malformed header '" + line + "'");
  }
  if (g.vertex_count < 1) throw std::invalid_argument("edge list: no vertices");
  for (int c; header >> c;) {
    if (c < 0 || c >= g.vertex_count) throw std::invalid_argument("edge list: bad corner");
    g.corners.push_back(c);
  }
  if (!header.eof()) throw std::invalid_argument("edge list: malformed corner list");

  std::set<std::pair<int, int>> seen;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    int u = 0, v = 0;
    std::string rest;
    if (!(row >> u >> v) || (row >> rest)) {
      throw std::invalid_argument("edge list: malformed edge '" + line + "'");
    }
    if (u < 0 || v < 0 || u >= g.vertex_count || v >= g.vertex_count) {
      throw std::invalid_argument("edge list: vertex out of range in '" + line + "'");
    }
    if (u == v) throw std::invalid_argument("edge list: self-loop at " + std::to_string(u));
    if (!seen.insert(std::minmax(u, v)).second) {
      throw std::invalid_argument("edge list: duplicate edge '" + line + "'");
    }
    g.edges.emplace_back(u, v);
  }
  return g;
}

}  // namespace sgforest
