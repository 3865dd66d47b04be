#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgforest/partition.hpp"
#include "sgforest/polynomial.hpp"
#include "sgforest/topology.hpp"

namespace sgforest {

// Stage-(n+1) class counts as polynomials in the stage-n class counts.
// Variable i of every polynomial is classes[i].
struct RecursionSystem {
  Family family;
  int copy_count = 0;
  std::vector<SymmetryClass> classes;
  std::vector<Polynomial> polynomials;
  // Assignments whose glued forests close a circuit.
  Polynomial rejected;

  int class_index(const std::string& name) const;
  std::vector<std::string> variable_names() const;
  std::vector<long> multiplicities() const;

  friend bool operator==(const RecursionSystem& a, const RecursionSystem& b);
};

enum class DeriveMode {
  // Copies are placed one at a time; partial connectivity of the labels
  // still needed later is the fold state.
  Fold,
  // Every state assignment is glued from scratch.
  Naive,
};

class ResourceLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Per-outer-partition polynomials, before orbit members are merged.
struct RawDerivation {
  std::vector<SymmetryClass> classes;
  std::map<SetPartition, Polynomial> by_partition;
  Polynomial rejected;
};

RawDerivation derive_raw(const CompositionSchema& schema, DeriveMode mode = DeriveMode::Fold);

RecursionSystem derive(const CompositionSchema& schema, DeriveMode mode = DeriveMode::Fold);

struct SymmetryReport {
  int raw_states = 0;
  int classes = 0;
  int target_partitions = 0;
  bool consistent = false;
  std::vector<std::string> mismatches;
};

// Checks that every member of a class orbit receives the same polynomial,
// so the class recursion does not depend on which representative is used.
SymmetryReport symmetrize_check(const CompositionSchema& schema);

// Canonical JSON document: classes, then per-class term lists sorted by
// monomial (descending), coefficients as decimal strings.
nlohmann::ordered_json to_json(const RecursionSystem& system);
RecursionSystem recursion_system_from_json(const nlohmann::ordered_json& doc);

}  // namespace sgforest
