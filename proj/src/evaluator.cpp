#include "sgforest/evaluator.hpp"

#include <ostream>
#include <stdexcept>

namespace sgforest {

ClassCountVector initial_vector(int d) {
  if (d < 1 || d + 1 > kMaxPartitionLabels) throw std::out_of_range("initial_vector: d out of range");
  ClassCountVector v;
  for (const auto& cls : orbit_classes(enumerate_partitions(d + 1))) {
    BigInt count = 1;
    for (int size : cls.block_signature) {
      if (size > 2) {
        BigInt trees;
        mpz_ui_pow_ui(trees.get_mpz_t(), size, size - 2);
        count *= trees;
      }
    }
    v.counts.push_back(count);
  }
  return v;
}

ClassCountVector initial_vector(const RecursionSystem& system) {
  return initial_vector(system.family.d);
}

namespace {

// One stage step. Powers of each count are computed once and shared by
// every class polynomial.
std::vector<BigInt> step(const RecursionSystem& system, const std::vector<BigInt>& x) {
  const int nvars = static_cast<int>(x.size());
  std::vector<std::vector<BigInt>> powers(nvars);
  for (int v = 0; v < nvars; ++v) {
    powers[v].reserve(system.copy_count + 1);
    powers[v].push_back(1);
    for (int e = 1; e <= system.copy_count; ++e) powers[v].push_back(powers[v].back() * x[v]);
  }
  std::vector<BigInt> out;
  out.reserve(system.polynomials.size());
  BigInt term;
  for (const auto& poly : system.polynomials) {
    BigInt total = 0;
    for (const auto& [m, c] : poly.terms()) {
      bool first = true;
      for (int v = 0; v < nvars; ++v) {
        const int e = m.exponents[v];
        if (!e) continue;
        if (first) {
          term = powers[v][e];
          first = false;
        } else {
          term *= powers[v][e];
        }
      }
      if (first) term = 1;
      if (c != 1) term *= c;
      total += term;
    }
    out.push_back(std::move(total));
  }
  return out;
}

}  // namespace

std::vector<ClassCountVector> iterate(const RecursionSystem& system,
                                      const ClassCountVector& start, int n) {
  if (start.counts.size() != system.classes.size()) {
    throw std::invalid_argument("iterate: start vector does not match the system's classes");
  }
  if (n < start.stage) throw std::invalid_argument("iterate: target stage precedes start stage");
  std::vector<ClassCountVector> out{start};
  while (out.back().stage < n) {
    ClassCountVector next;
    next.stage = out.back().stage + 1;
    next.counts = step(system, out.back().counts);
    out.push_back(std::move(next));
  }
  return out;
}

BigInt forest_count(const ClassCountVector& v, const RecursionSystem& system) {
  if (v.counts.size() != system.classes.size()) {
    throw std::invalid_argument("forest_count: vector does not match the system's classes");
  }
  BigInt f = 0;
  for (std::size_t i = 0; i < v.counts.size(); ++i) f += system.classes[i].multiplicity * v.counts[i];
  return f;
}

int default_max_stage(const Family& family) {
  require_supported(family);
  if (family.b == 3) return 6;
  if (family.b == 4) return 5;
  switch (family.d) {
    case 2: return 9;
    case 3: return 10;
    default: return 7;
  }
}

void write_csv(std::ostream& out, const RecursionSystem& system,
               std::span<const ClassCountVector> vectors) {
  out << "stage,class,count\n";
  for (const auto& v : vectors) {
    out << v.stage << ",f," << to_decimal(forest_count(v, system)) << '\n';
    for (std::size_t i = 0; i < system.classes.size(); ++i) {
      out << v.stage << ',' << system.classes[i].name << ',' << to_decimal(v.counts[i]) << '\n';
    }
  }
}

nlohmann::ordered_json to_json(const RecursionSystem& system,
                               std::span<const ClassCountVector> vectors) {
  nlohmann::ordered_json doc;
  doc["family"] = {{"name", system.family.name()}, {"d", system.family.d}, {"b", system.family.b}};
  auto stages = nlohmann::ordered_json::array();
  for (const auto& v : vectors) {
    nlohmann::ordered_json counts;
    counts["f"] = to_decimal(forest_count(v, system));
    for (std::size_t i = 0; i < system.classes.size(); ++i) {
      counts[system.classes[i].name] = to_decimal(v.counts[i]);
    }
    stages.push_back({{"stage", v.stage}, {"counts", counts}});
  }
  doc["stages"] = stages;
  return doc;
}

void write_markdown(std::ostream& out, const RecursionSystem& system,
                    std::span<const ClassCountVector> vectors) {
  out << "| n |";
  for (const auto& v : vectors) out << ' ' << v.stage << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < vectors.size(); ++i) out << "---:|";
  out << '\n';
  auto row = [&](const std::string& name, auto value_of) {
    out << "| " << name << " |";
    for (const auto& v : vectors) out << ' ' << grouped_decimal(value_of(v)) << " |";
    out << '\n';
  };
  row("f", [&](const ClassCountVector& v) { return forest_count(v, system); });
  for (std::size_t i = 0; i < system.classes.size(); ++i) {
    row(system.classes[i].name, [&](const ClassCountVector& v) { return v.counts[i]; });
  }
}

}  // namespace sgforest
