#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sgforest {

inline constexpr int kMaxPartitionLabels = 8;

// A partition of the corner labels 0..k-1 into tree-membership blocks.
//
// Stored as a restricted growth string: label i carries the index of its
// block, and blocks are numbered in order of their first label. Equal
// partitions therefore have identical encodings.
class SetPartition {
 public:
  SetPartition() = default;

  // Throws std::invalid_argument unless `rgs` is a valid restricted growth
  // string of length 1..kMaxPartitionLabels.
  static SetPartition from_rgs(std::vector<std::uint8_t> rgs);

  // Canonicalizes any block assignment (label -> arbitrary block id).
  static SetPartition from_assignment(std::span<const int> block_ids);

  int size() const { return static_cast<int>(rgs_.size()); }
  int block_count() const { return block_count_; }
  int block_of(int label) const { return rgs_[label]; }
  const std::vector<std::uint8_t>& rgs() const { return rgs_; }

  std::vector<std::vector<int>> blocks() const;

  // Block sizes, largest first.
  std::vector<int> block_signature() const;

  // Relabels corner i as perm[i].
  SetPartition permuted(std::span<const int> perm) const;

  // 4 bits per label; unique among partitions of the same size.
  std::uint32_t code() const;

  // "{0,1}{2}"
  std::string to_string() const;

  friend bool operator==(const SetPartition&, const SetPartition&) = default;
  friend auto operator<=>(const SetPartition& a, const SetPartition& b) {
    return a.rgs_ <=> b.rgs_;
  }

 private:
  explicit SetPartition(std::vector<std::uint8_t> rgs);
  std::vector<std::uint8_t> rgs_;
  int block_count_ = 0;
};

// Builds the canonical partition of labels 0..label_count-1 from explicit
// blocks. Throws std::invalid_argument for empty, overlapping, unknown or
// missing labels.
SetPartition canonical_partition(std::span<const std::vector<int>> blocks,
                                 int label_count);

std::uint64_t bell_number(int k);

// All Bell(k) partitions of k labels in lexicographic restricted-growth
// order. Throws std::out_of_range unless 1 <= k <= kMaxPartitionLabels.
std::vector<SetPartition> enumerate_partitions(int k);

struct SymmetryClass {
  std::string name;
  SetPartition representative;
  int multiplicity = 0;
  std::vector<int> block_signature;
  std::vector<SetPartition> members;
};

// Class name used for a block-size signature with k corners; falls back to
// a generic "B<sizes>" name outside the named tables for k = 3, 4, 5.
std::string class_name_for(std::span<const int> block_signature);

// Groups a complete partition list into orbits under all permutations of
// the labels. Classes come out in the naming-table order (t, g, h, ...).
// Throws std::invalid_argument when the list is not complete.
std::vector<SymmetryClass> orbit_classes(std::span<const SetPartition> partitions);

// One glued piece: where each of its corners lands, and the connection
// pattern of a spanning forest on it.
struct GluedCopy {
  std::span<const int> corner_to_junction;
  const SetPartition* state = nullptr;
};

// Glues the pieces at shared junction labels. Returns nullopt when the
// union of the pieces' forests contains a circuit; otherwise the partition
// induced on `outer` (in the given order). Throws std::invalid_argument
// for malformed corner maps or outer labels that no piece touches.
std::optional<SetPartition> glue(std::span<const GluedCopy> copies,
                                 std::span<const int> outer);

}  // namespace sgforest
