#pragma once

#include <span>
#include <string>
#include <vector>

#include "sgforest/deriver.hpp"
#include "sgforest/evaluator.hpp"
#include "sgforest/golden.hpp"
#include "sgforest/growth.hpp"

namespace sgforest {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Cell-by-cell comparison of computed vectors with a printed table.
//
// A cell that differs from the comma-grouped computed value is accepted as
// a printing anomaly only when the rest of its column pins it down:
//  - an f cell whose digits equal the computed f, and whose printed class
//    cells sum to it;
//  - a class cell whose value, recovered from the printed f and the other
//    printed class cells, equals the computed value.
// Anything else is a mismatch.
struct TableComparison {
  int exact = 0;
  std::vector<std::string> anomalies;
  std::vector<std::string> mismatches;

  bool passed() const { return mismatches.empty(); }
};

TableComparison compare_table(const RecursionSystem& system,
                              std::span<const ClassCountVector> vectors, const GoldenTable& table);

// The printed constant's digits must be a prefix of the certified digits,
// with at least `min_certified_digits` certified.
Check check_growth_constant(const BoundReport& report, const GoldenGrowthConstant& golden);

// Every check for one family: symmetry, conservation, golden recursions and
// closed form, printed tables, initial vector, stage-1 oracle, growth
// constant.
std::vector<Check> verify_family(const Family& family, const GoldenData& golden);

}  // namespace sgforest
