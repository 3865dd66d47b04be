#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgforest/topology.hpp"

namespace sgforest {

class GoldenDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Published recursions for one family, as expression text over the class
// names plus f and any shorthand names.
struct GoldenRecursion {
  Family family;
  std::string forest_next;
  std::map<std::string, std::string> classes_next;  // empty when unpublished
};

// A printed stage table. Cells are the digit strings exactly as printed.
struct GoldenTable {
  Family family;
  std::vector<int> stages;
  std::vector<std::string> row_names;
  std::map<std::string, std::vector<std::string>> rows;

  const std::string& cell(const std::string& row, int stage) const;
};

struct GoldenGrowthConstant {
  Family family;
  int m = 0;
  std::string value;
  int min_certified_digits = 11;
};

struct GoldenBoundRow {
  std::string key;  // "2".."5" for dimension rows, "3", "4", "inf" for side lengths
  std::vector<std::string> cells;
};

struct GoldenData {
  std::vector<GoldenRecursion> recursions;
  std::vector<GoldenTable> tables;
  std::vector<GoldenGrowthConstant> growth_constants;
  std::map<int, std::map<std::string, std::string>> initial_vectors;  // d -> class -> count
  std::map<int, std::string> complete_graph_forests;  // vertex count -> total
  std::map<std::string, std::string> tree_constants;  // family name -> value
  std::vector<std::string> bound_columns;
  std::vector<GoldenBoundRow> dimension_rows;
  std::vector<GoldenBoundRow> side_length_rows;
  std::string certificate_sg2_m3;  // e.g. "3e-7"
  double certificate_tolerance_factor = 2.0;

  const GoldenRecursion* recursion(const Family& family) const;
  const GoldenTable* table(const Family& family) const;
  const GoldenGrowthConstant* growth_constant(const Family& family) const;
};

// Explicit directory if given, else $SGFOREST_DATA_DIR, else the build-time
// default.
std::filesystem::path resolve_data_dir(const std::optional<std::filesystem::path>& explicit_dir = {});

// Reads golden/recursions.json, golden/tables.json and golden/constants.json.
GoldenData load_golden(const std::filesystem::path& data_dir);

}  // namespace sgforest
