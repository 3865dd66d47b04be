#include "sgforest/partition.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "sgforest/disjoint_set.hpp"

namespace sgforest {

namespace {

struct NamedSignature {
  std::vector<int> signature;
  const char* name;
};

const std::vector<NamedSignature>& naming_table(int k) {
  static const std::vector<NamedSignature> k3 = {
      {{3}, "t"}, {{2, 1}, "g"}, {{1, 1, 1}, "h"}};
  static const std::vector<NamedSignature> k4 = {
      {{4}, "t"}, {{3, 1}, "g"}, {{2, 2}, "h"}, {{2, 1, 1}, "p"}, {{1, 1, 1, 1}, "q"}};
  // With five corners g is a pair plus a triple and h is four plus one.
  static const std::vector<NamedSignature> k5 = {
      {{5}, "t"},          {{3, 2}, "g"},          {{4, 1}, "h"},
      {{2, 2, 1}, "p"},    {{3, 1, 1}, "q"},       {{2, 1, 1, 1}, "r"},
      {{1, 1, 1, 1, 1}, "s"}};
  static const std::vector<NamedSignature> none;
  switch (k) {
    case 3: return k3;
    case 4: return k4;
    case 5: return k5;
    default: return none;
  }
}

int signature_rank(std::span<const int> signature) {
  int k = 0;
  for (int s : signature) k += s;
  const auto& table = naming_table(k);
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (std::equal(table[i].signature.begin(), table[i].signature.end(),
                   signature.begin(), signature.end())) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

}  // namespace

SetPartition::SetPartition(std::vector<std::uint8_t> rgs) : rgs_(std::move(rgs)) {
  for (std::uint8_t b : rgs_) block_count_ = std::max(block_count_, b + 1);
}

SetPartition SetPartition::from_rgs(std::vector<std::uint8_t> rgs) {
  if (rgs.empty() || rgs.size() > kMaxPartitionLabels) {
    throw std::invalid_argument("partition size out of range");
  }
  int next = 0;
  for (std::uint8_t b : rgs) {
    if (b > next) throw std::invalid_argument("not a restricted growth string");
    if (b == next) ++next;
  }
  return SetPartition(std::move(rgs));
}

SetPartition SetPartition::from_assignment(std::span<const int> block_ids) {
  if (block_ids.empty() || block_ids.size() > kMaxPartitionLabels) {
    throw std::invalid_argument("partition size out of range");
  }
  std::vector<std::uint8_t> rgs(block_ids.size());
  std::vector<int> seen;
  for (std::size_t i = 0; i < block_ids.size(); ++i) {
    auto it = std::find(seen.begin(), seen.end(), block_ids[i]);
    if (it == seen.end()) {
      rgs[i] = static_cast<std::uint8_t>(seen.size());
      seen.push_back(block_ids[i]);
    } else {
      rgs[i] = static_cast<std::uint8_t>(it - seen.begin());
    }
  }
  return SetPartition(std::move(rgs));
}

std::vector<std::vector<int>> SetPartition::blocks() const {
  std::vector<std::vector<int>> out(block_count_);
  for (int i = 0; i < size(); ++i) out[rgs_[i]].push_back(i);
  return out;
}

std::vector<int> SetPartition::block_signature() const {
  std::vector<int> sizes(block_count_, 0);
  for (std::uint8_t b : rgs_) ++sizes[b];
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  return sizes;
}

SetPartition SetPartition::permuted(std::span<const int> perm) const {
  std::vector<int> ids(rgs_.size());
  for (std::size_t i = 0; i < rgs_.size(); ++i) ids[perm[i]] = rgs_[i];
  return from_assignment(ids);
}

std::uint32_t SetPartition::code() const {
  std::uint32_t c = 0;
  for (std::size_t i = 0; i < rgs_.size(); ++i) c |= std::uint32_t{rgs_[i]} << (4 * i);
  return c;
}

std::string SetPartition::to_string() const {
  std::string s;
  for (const auto& block : blocks()) {
    s.push_back('{');
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i) s.push_back(',');
      s += std::to_string(block[i]);
    }
    s.push_back('}');
  }
  return s;
}

SetPartition canonical_partition(std::span<const std::vector<int>> blocks,
                                 int label_count) {
  if (label_count < 1 || label_count > kMaxPartitionLabels) {
    throw std::invalid_argument("label count out of range");
  }
  std::vector<int> owner(label_count, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw std::invalid_argument("empty block");
    for (int label : blocks[b]) {
      if (label < 0 || label >= label_count) {
        throw std::invalid_argument("unknown label " + std::to_string(label));
      }
      if (owner[label] != -1) {
        throw std::invalid_argument("label " + std::to_string(label) +
                                    " appears in more than one block");
      }
      owner[label] = static_cast<int>(b);
    }
  }
  for (int i = 0; i < label_count; ++i) {
    if (owner[i] == -1) {
      throw std::invalid_argument("label " + std::to_string(i) + " is not covered");
    }
  }
  return SetPartition::from_assignment(owner);
}

std::uint64_t bell_number(int k) {
  // Bell triangle.
  std::vector<std::uint64_t> row{1};
  for (int i = 1; i <= k; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (std::uint64_t v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

std::vector<SetPartition> enumerate_partitions(int k) {
  if (k < 1 || k > kMaxPartitionLabels) {
    throw std::out_of_range("enumerate_partitions: k must be in 1.." +
                            std::to_string(kMaxPartitionLabels));
  }
  std::vector<SetPartition> out;
  std::vector<std::uint8_t> rgs(k, 0);
  // prefix_max[i] = max(rgs[0..i])
  std::vector<int> prefix_max(k, 0);
  while (true) {
    out.push_back(SetPartition::from_rgs(rgs));
    int i = k - 1;
    while (i > 0 && rgs[i] > prefix_max[i - 1]) --i;
    if (i == 0) break;
    ++rgs[i];
    prefix_max[i] = std::max<int>(prefix_max[i - 1], rgs[i]);
    for (int j = i + 1; j < k; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
  return out;
}

std::string class_name_for(std::span<const int> block_signature) {
  int k = 0;
  for (int s : block_signature) k += s;
  const int rank = signature_rank(block_signature);
  if (rank >= 0) return naming_table(k)[rank].name;
  std::string name = "B";
  for (std::size_t i = 0; i < block_signature.size(); ++i) {
    if (i) name.push_back('_');
    name += std::to_string(block_signature[i]);
  }
  return name;
}

std::vector<SymmetryClass> orbit_classes(std::span<const SetPartition> partitions) {
  if (partitions.empty()) throw std::invalid_argument("empty partition list");
  const int k = partitions.front().size();
  std::map<SetPartition, int> index;
  for (const auto& p : partitions) {
    if (p.size() != k) throw std::invalid_argument("partitions over different label sets");
    if (!index.emplace(p, 0).second) throw std::invalid_argument("duplicate partition");
  }
  if (index.size() != bell_number(k)) {
    throw std::invalid_argument("incomplete partition list: " +
                                std::to_string(index.size()) + " of " +
                                std::to_string(bell_number(k)));
  }

  // Orbit closure under the adjacent transpositions, which generate S_k.
  std::vector<std::vector<int>> generators;
  for (int i = 0; i + 1 < k; ++i) {
    std::vector<int> perm(k);
    for (int j = 0; j < k; ++j) perm[j] = j;
    std::swap(perm[i], perm[i + 1]);
    generators.push_back(std::move(perm));
  }

  std::vector<SymmetryClass> classes;
  for (auto& [partition, orbit] : index) {
    if (orbit != 0) continue;
    SymmetryClass cls;
    cls.representative = partition;
    std::vector<SetPartition> frontier{partition};
    orbit = static_cast<int>(classes.size()) + 1;
    while (!frontier.empty()) {
      SetPartition p = frontier.back();
      frontier.pop_back();
      cls.members.push_back(p);
      for (const auto& g : generators) {
        SetPartition q = p.permuted(g);
        int& slot = index.at(q);
        if (slot == 0) {
          slot = orbit;
          frontier.push_back(q);
        }
      }
    }
    std::sort(cls.members.begin(), cls.members.end());
    cls.representative = cls.members.front();
    cls.multiplicity = static_cast<int>(cls.members.size());
    cls.block_signature = cls.representative.block_signature();
    cls.name = class_name_for(cls.block_signature);
    classes.push_back(std::move(cls));
  }

  std::stable_sort(classes.begin(), classes.end(),
                   [](const SymmetryClass& a, const SymmetryClass& b) {
                     const int ra = signature_rank(a.block_signature);
                     const int rb = signature_rank(b.block_signature);
                     if (ra != rb) return ra < rb;
                     return a.block_signature > b.block_signature;
                   });
  return classes;
}

std::optional<SetPartition> glue(std::span<const GluedCopy> copies,
                                 std::span<const int> outer) {
  std::unordered_map<int, int> node;  // junction label -> dense index
  for (const auto& copy : copies) {
    if (copy.state == nullptr) throw std::invalid_argument("glue: copy without state");
    if (static_cast<int>(copy.corner_to_junction.size()) != copy.state->size()) {
      throw std::invalid_argument("glue: corner map does not match state size");
    }
    for (std::size_t i = 0; i < copy.corner_to_junction.size(); ++i) {
      const int label = copy.corner_to_junction[i];
      if (label < 0) throw std::invalid_argument("glue: negative junction label");
      for (std::size_t j = 0; j < i; ++j) {
        if (copy.corner_to_junction[j] == label) {
          throw std::invalid_argument("glue: corner map is not injective");
        }
      }
      node.emplace(label, static_cast<int>(node.size()));
    }
  }
  for (std::size_t i = 0; i < outer.size(); ++i) {
    if (!node.contains(outer[i])) {
      throw std::invalid_argument("glue: outer label " + std::to_string(outer[i]) +
                                  " is not a junction of any copy");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (outer[j] == outer[i]) throw std::invalid_argument("glue: repeated outer label");
    }
  }

  // Each block acts as a star joining its junctions; a redundant union is a
  // cycle in the junction/block incidence structure.
  DisjointSet sets(static_cast<int>(node.size()));
  for (const auto& copy : copies) {
    for (const auto& block : copy.state->blocks()) {
      const int first = node.at(copy.corner_to_junction[block.front()]);
      for (std::size_t i = 1; i < block.size(); ++i) {
        if (!sets.unite(first, node.at(copy.corner_to_junction[block[i]]))) {
          return std::nullopt;
        }
      }
    }
  }

  std::vector<int> roots(outer.size());
  for (std::size_t i = 0; i < outer.size(); ++i) roots[i] = sets.find(node.at(outer[i]));
  return SetPartition::from_assignment(roots);
}

}  // namespace sgforest
