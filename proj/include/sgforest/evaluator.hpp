#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include <json.hpp>

#include "sgforest/bigint.hpp"
#include "sgforest/deriver.hpp"

namespace sgforest {

// Exact count per symmetry class at one stage, in the class order of the
// system that produced it.
struct ClassCountVector {
  int stage = 0;
  std::vector<BigInt> counts;
};

// Stage-0 counts on K_{d+1}: each class counts the forests whose trees
// span exactly its blocks, i.e. the product over blocks B of |B|^(|B|-2).
ClassCountVector initial_vector(int d);
ClassCountVector initial_vector(const RecursionSystem& system);

// Vectors for stages start.stage .. n, no rounding anywhere.
std::vector<ClassCountVector> iterate(const RecursionSystem& system,
                                      const ClassCountVector& start, int n);

// sum over classes of multiplicity * count
BigInt forest_count(const ClassCountVector& v, const RecursionSystem& system);

// Stage defaults: one past the stage the bound computation needs.
int default_max_stage(const Family& family);

// Per-stage output. Rows are (stage, class, count) with an extra "f" row
// for the forest total; CSV counts are plain digits.
void write_csv(std::ostream& out, const RecursionSystem& system,
               std::span<const ClassCountVector> vectors);
nlohmann::ordered_json to_json(const RecursionSystem& system,
                               std::span<const ClassCountVector> vectors);
// Table layout with comma-grouped counts: one column per stage, rows f
// then the classes.
void write_markdown(std::ostream& out, const RecursionSystem& system,
                    std::span<const ClassCountVector> vectors);

}  // namespace sgforest
