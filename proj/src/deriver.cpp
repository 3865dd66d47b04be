#include "sgforest/deriver.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "sgforest/disjoint_set.hpp"

namespace sgforest {

namespace {

// Exponent of class c lives in bits [8c, 8c+8).
using PackedMonomial = std::uint64_t;
using PackedPoly = std::unordered_map<PackedMonomial, std::uint64_t>;

constexpr std::uint64_t kDeadState = ~std::uint64_t{0};
constexpr int kMaxActiveLabels = 16;
constexpr std::size_t kMaxFoldStates = 2'000'000;

PackedMonomial class_factor(int cls) { return PackedMonomial{1} << (8 * cls); }

void add_checked(std::uint64_t& slot, std::uint64_t value) {
  if (__builtin_add_overflow(slot, value, &slot)) {
    throw ResourceLimitExceeded("derive: coefficient overflow");
  }
}

// target += source * x_cls * weight
void add_shifted(PackedPoly& target, const PackedPoly& source, int cls, std::uint64_t weight) {
  const PackedMonomial shift = class_factor(cls);
  for (const auto& [m, c] : source) {
    std::uint64_t scaled = 0;
    if (__builtin_mul_overflow(c, weight, &scaled)) {
      throw ResourceLimitExceeded("derive: coefficient overflow");
    }
    add_checked(target[m + shift], scaled);
  }
}

Polynomial unpack(const PackedPoly& packed, int class_count) {
  Polynomial p(class_count);
  for (const auto& [m, c] : packed) {
    Monomial mono;
    for (int i = 0; i < class_count; ++i) {
      mono.exponents[i] = static_cast<std::uint8_t>((m >> (8 * i)) & 0xff);
    }
    p.add_term(mono, BigInt(static_cast<unsigned long>(c)));
  }
  return p;
}

struct StateSpace {
  std::vector<SetPartition> partitions;
  std::vector<std::vector<std::vector<int>>> blocks;
  std::vector<int> class_of;
  std::vector<SymmetryClass> classes;
};

StateSpace make_state_space(int corners) {
  StateSpace space;
  space.partitions = enumerate_partitions(corners);
  space.classes = orbit_classes(space.partitions);
  if (static_cast<int>(space.classes.size()) > kMaxVariables) {
    throw ResourceLimitExceeded("derive: too many symmetry classes");
  }
  std::map<SetPartition, int> cls;
  for (std::size_t c = 0; c < space.classes.size(); ++c) {
    for (const auto& member : space.classes[c].members) cls[member] = static_cast<int>(c);
  }
  for (const auto& p : space.partitions) {
    space.blocks.push_back(p.blocks());
    space.class_of.push_back(cls.at(p));
  }
  return space;
}

void validate_schema(const CompositionSchema& schema) {
  require_supported(schema.family);
  const int k = schema.corner_count();
  if (schema.copies.empty()) throw std::invalid_argument("schema has no copies");
  for (const auto& copy : schema.copies) {
    if (static_cast<int>(copy.size()) != k) throw std::invalid_argument("schema: bad corner map");
    for (int label : copy) {
      if (label < 0 || label >= schema.junction_count) {
        throw std::invalid_argument("schema: junction label out of range");
      }
    }
  }
  if (static_cast<int>(schema.outer.size()) != k) throw std::invalid_argument("schema: bad outer list");
}

// Active labels are those already touched that are outer corners or are
// still needed by an unplaced copy.
struct FoldStep {
  std::vector<int> before;
  std::vector<int> after;
  int local_count = 0;
  std::vector<int> corner_local;
  std::vector<int> after_local;
};

std::vector<FoldStep> plan_fold(const CompositionSchema& schema) {
  const int n = schema.copy_count();
  std::vector<int> last_use(schema.junction_count, -1);
  for (int i = 0; i < n; ++i) {
    for (int label : schema.copies[i]) last_use[label] = i;
  }
  std::vector<bool> is_outer(schema.junction_count, false);
  for (int label : schema.outer) is_outer[label] = true;

  std::vector<FoldStep> steps;
  std::set<int> seen;
  std::vector<int> active;
  for (int i = 0; i < n; ++i) {
    FoldStep step;
    step.before = active;
    std::vector<int> local = active;
    for (int label : schema.copies[i]) {
      if (std::find(local.begin(), local.end(), label) == local.end()) local.push_back(label);
      seen.insert(label);
    }
    step.local_count = static_cast<int>(local.size());
    for (int label : schema.copies[i]) {
      step.corner_local.push_back(
          static_cast<int>(std::find(local.begin(), local.end(), label) - local.begin()));
    }
    active.clear();
    for (int label : seen) {
      if (is_outer[label] || last_use[label] > i) active.push_back(label);
    }
    step.after = active;
    for (int label : active) {
      step.after_local.push_back(
          static_cast<int>(std::find(local.begin(), local.end(), label) - local.begin()));
    }
    if (static_cast<int>(step.after.size()) > kMaxActiveLabels) {
      throw ResourceLimitExceeded("derive: fold boundary exceeds " +
                                  std::to_string(kMaxActiveLabels) + " labels");
    }
    steps.push_back(std::move(step));
  }
  return steps;
}

std::uint64_t transition(const FoldStep& step, std::uint64_t code,
                         const std::vector<std::vector<int>>& blocks) {
  DisjointSet sets(step.local_count);
  int first_of_block[kMaxActiveLabels];
  std::fill(std::begin(first_of_block), std::end(first_of_block), -1);
  for (std::size_t j = 0; j < step.before.size(); ++j) {
    const int b = static_cast<int>((code >> (4 * j)) & 0xf);
    if (first_of_block[b] < 0) {
      first_of_block[b] = static_cast<int>(j);
    } else {
      sets.unite(first_of_block[b], static_cast<int>(j));
    }
  }
  for (const auto& block : blocks) {
    const int head = step.corner_local[block.front()];
    for (std::size_t m = 1; m < block.size(); ++m) {
      if (!sets.unite(head, step.corner_local[block[m]])) return kDeadState;
    }
  }
  std::uint64_t next = 0;
  int roots[kMaxActiveLabels + kMaxPartitionLabels];
  int count = 0;
  for (std::size_t j = 0; j < step.after_local.size(); ++j) {
    const int r = sets.find(step.after_local[j]);
    int b = 0;
    while (b < count && roots[b] != r) ++b;
    if (b == count) roots[count++] = r;
    next |= std::uint64_t(b) << (4 * j);
  }
  return next;
}

RawDerivation finish(const StateSpace& space, const std::map<SetPartition, PackedPoly>& raw,
                     const PackedPoly& rejected) {
  const int nclasses = static_cast<int>(space.classes.size());
  RawDerivation out;
  out.classes = space.classes;
  for (const auto& [partition, poly] : raw) out.by_partition.emplace(partition, unpack(poly, nclasses));
  out.rejected = unpack(rejected, nclasses);
  return out;
}

RawDerivation derive_fold(const CompositionSchema& schema, const StateSpace& space) {
  const auto steps = plan_fold(schema);
  const int nstates = static_cast<int>(space.partitions.size());

  // The empty boundary before the first copy is the single state 0.
  std::unordered_map<std::uint64_t, PackedPoly> states;
  states[0][0] = 1;
  for (const FoldStep& step : steps) {
    std::unordered_map<std::uint64_t, PackedPoly> next;
    for (const auto& [code, poly] : states) {
      if (code == kDeadState) {
        for (int s = 0; s < nstates; ++s) add_shifted(next[kDeadState], poly, space.class_of[s], 1);
        continue;
      }
      // Group the copy states by (successor, class) before touching the
      // polynomial.
      std::map<std::pair<std::uint64_t, int>, std::uint64_t> moves;
      for (int s = 0; s < nstates; ++s) {
        ++moves[{transition(step, code, space.blocks[s]), space.class_of[s]}];
      }
      for (const auto& [key, weight] : moves) add_shifted(next[key.first], poly, key.second, weight);
    }
    if (next.size() > kMaxFoldStates) {
      throw ResourceLimitExceeded("derive: fold state count exceeds " +
                                  std::to_string(kMaxFoldStates));
    }
    states = std::move(next);
  }

  const std::vector<int>& boundary = steps.back().after;
  std::map<SetPartition, PackedPoly> raw;
  PackedPoly rejected;
  for (const auto& [code, poly] : states) {
    if (code == kDeadState) {
      rejected = poly;
      continue;
    }
    std::vector<int> ids;
    for (int label : schema.outer) {
      const auto pos = std::find(boundary.begin(), boundary.end(), label) - boundary.begin();
      ids.push_back(static_cast<int>((code >> (4 * pos)) & 0xf));
    }
    raw[SetPartition::from_assignment(ids)] = poly;
  }
  return finish(space, raw, rejected);
}

RawDerivation derive_naive(const CompositionSchema& schema, const StateSpace& space) {
  const int n = schema.copy_count();
  const int nstates = static_cast<int>(space.partitions.size());
  std::vector<int> choice(n, 0);
  std::vector<GluedCopy> copies(n);
  for (int i = 0; i < n; ++i) copies[i].corner_to_junction = schema.copies[i];

  std::map<SetPartition, PackedPoly> raw;
  PackedPoly rejected;
  while (true) {
    PackedMonomial mono = 0;
    for (int i = 0; i < n; ++i) {
      copies[i].state = &space.partitions[choice[i]];
      mono += class_factor(space.class_of[choice[i]]);
    }
    if (auto outer = glue(copies, schema.outer)) {
      add_checked(raw[*outer][mono], 1);
    } else {
      add_checked(rejected[mono], 1);
    }
    int i = n - 1;
    while (i >= 0 && ++choice[i] == nstates) choice[i--] = 0;
    if (i < 0) break;
  }
  return finish(space, raw, rejected);
}

}  // namespace

int RecursionSystem::class_index(const std::string& name) const {
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].name == name) return static_cast<int>(i);
  }
  throw std::out_of_range("no class named '" + name + "' in " + family.name());
}

std::vector<std::string> RecursionSystem::variable_names() const {
  std::vector<std::string> names;
  for (const auto& c : classes) names.push_back(c.name);
  return names;
}

std::vector<long> RecursionSystem::multiplicities() const {
  std::vector<long> m;
  for (const auto& c : classes) m.push_back(c.multiplicity);
  return m;
}

bool operator==(const RecursionSystem& a, const RecursionSystem& b) {
  if (!(a.family == b.family) || a.copy_count != b.copy_count ||
      a.classes.size() != b.classes.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.classes.size(); ++i) {
    if (a.classes[i].name != b.classes[i].name ||
        a.classes[i].multiplicity != b.classes[i].multiplicity) {
      return false;
    }
  }
  return a.polynomials == b.polynomials && a.rejected == b.rejected;
}

RawDerivation derive_raw(const CompositionSchema& schema, DeriveMode mode) {
  validate_schema(schema);
  const StateSpace space = make_state_space(schema.corner_count());
  return mode == DeriveMode::Fold ? derive_fold(schema, space) : derive_naive(schema, space);
}

RecursionSystem derive(const CompositionSchema& schema, DeriveMode mode) {
  RawDerivation raw = derive_raw(schema, mode);
  RecursionSystem system;
  system.family = schema.family;
  system.copy_count = schema.copy_count();
  system.classes = raw.classes;
  const int nclasses = static_cast<int>(raw.classes.size());
  for (const auto& cls : raw.classes) {
    auto it = raw.by_partition.find(cls.representative);
    system.polynomials.push_back(it == raw.by_partition.end() ? Polynomial(nclasses) : it->second);
  }
  system.rejected = std::move(raw.rejected);
  return system;
}

SymmetryReport symmetrize_check(const CompositionSchema& schema) {
  const RawDerivation raw = derive_raw(schema, DeriveMode::Fold);
  SymmetryReport report;
  report.raw_states = static_cast<int>(bell_number(schema.corner_count()));
  report.classes = static_cast<int>(raw.classes.size());
  report.target_partitions = static_cast<int>(raw.by_partition.size());
  std::vector<std::string> names;
  for (const auto& c : raw.classes) names.push_back(c.name);
  const Polynomial zero(static_cast<int>(raw.classes.size()));
  for (const auto& cls : raw.classes) {
    auto find = [&](const SetPartition& p) -> const Polynomial& {
      auto it = raw.by_partition.find(p);
      return it == raw.by_partition.end() ? zero : it->second;
    };
    const Polynomial& reference = find(cls.representative);
    for (const auto& member : cls.members) {
      if (!(find(member) == reference)) {
        report.mismatches.push_back("class " + cls.name + ": partition " + member.to_string() +
                                    " differs from representative " +
                                    cls.representative.to_string());
      }
    }
  }
  report.consistent = report.mismatches.empty();
  return report;
}

namespace {

nlohmann::ordered_json terms_to_json(const Polynomial& p) {
  auto terms = nlohmann::ordered_json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    auto exps = nlohmann::ordered_json::array();
    for (int v = 0; v < p.variable_count(); ++v) exps.push_back(it->first.exponents[v]);
    terms.push_back({{"coefficient", to_decimal(it->second)}, {"exponents", exps}});
  }
  return terms;
}

Polynomial terms_from_json(const nlohmann::ordered_json& terms, int nvars) {
  Polynomial p(nvars);
  for (const auto& term : terms) {
    const auto& exps = term.at("exponents");
    if (static_cast<int>(exps.size()) != nvars) {
      throw std::invalid_argument("recursion JSON: exponent vector has wrong length");
    }
    Monomial m;
    for (int v = 0; v < nvars; ++v) m.exponents[v] = exps[v].get<std::uint8_t>();
    p.add_term(m, parse_decimal(term.at("coefficient").get<std::string>()));
  }
  return p;
}

}  // namespace

nlohmann::ordered_json to_json(const RecursionSystem& system) {
  nlohmann::ordered_json doc;
  doc["family"] = {{"name", system.family.name()}, {"d", system.family.d}, {"b", system.family.b}};
  doc["copy_count"] = system.copy_count;
  auto classes = nlohmann::ordered_json::array();
  for (const auto& c : system.classes) {
    classes.push_back({{"name", c.name},
                       {"multiplicity", c.multiplicity},
                       {"block_signature", c.block_signature},
                       {"representative", c.representative.to_string()}});
  }
  doc["classes"] = classes;
  const auto names = system.variable_names();
  nlohmann::ordered_json recursions;
  for (std::size_t i = 0; i < system.classes.size(); ++i) {
    recursions[system.classes[i].name] = {{"expression", system.polynomials[i].to_string(names)},
                                          {"terms", terms_to_json(system.polynomials[i])}};
  }
  doc["recursions"] = recursions;
  doc["rejected"] = {{"expression", system.rejected.to_string(names)},
                     {"terms", terms_to_json(system.rejected)}};
  return doc;
}

RecursionSystem recursion_system_from_json(const nlohmann::ordered_json& doc) {
  RecursionSystem system;
  system.family = Family{doc.at("family").at("d").get<int>(), doc.at("family").at("b").get<int>()};
  require_supported(system.family);
  system.copy_count = doc.at("copy_count").get<int>();
  const auto all = orbit_classes(enumerate_partitions(system.family.corner_count()));
  for (const auto& entry : doc.at("classes")) {
    const std::string name = entry.at("name").get<std::string>();
    auto it = std::find_if(all.begin(), all.end(), [&](const SymmetryClass& c) { return c.name == name; });
    if (it == all.end()) throw std::invalid_argument("recursion JSON: unknown class '" + name + "'");
    if (entry.at("multiplicity").get<int>() != it->multiplicity) {
      throw std::invalid_argument("recursion JSON: wrong multiplicity for class '" + name + "'");
    }
    system.classes.push_back(*it);
  }
  const int nvars = static_cast<int>(system.classes.size());
  for (const auto& c : system.classes) {
    system.polynomials.push_back(terms_from_json(doc.at("recursions").at(c.name).at("terms"), nvars));
  }
  system.rejected = terms_from_json(doc.at("rejected").at("terms"), nvars);
  return system;
}

}  // namespace sgforest
