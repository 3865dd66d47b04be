#include "sgforest/golden.hpp"

#include <cstdlib>
#include <fstream>

#ifndef SGFOREST_DATA_DIR
#define SGFOREST_DATA_DIR "data"
#endif

namespace sgforest {

namespace {

using Json = nlohmann::ordered_json;

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GoldenDataError("cannot open golden file " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw GoldenDataError(path.string() + ": " + e.what());
  }
}

Family family_of(const Json& j) { return Family{j.at("d").get<int>(), j.at("b").get<int>()}; }

template <typename T>
const T* find_family(const std::vector<T>& items, const Family& family) {
  for (const auto& item : items) {
    if (item.family == family) return &item;
  }
  return nullptr;
}

std::vector<GoldenBoundRow> bound_rows(const Json& rows, const char* key) {
  std::vector<GoldenBoundRow> out;
  for (const auto& r : rows) {
    GoldenBoundRow row;
    const auto& k = r.at(key);
    row.key = k.is_string() ? k.get<std::string>() : std::to_string(k.get<int>());
    row.cells = r.at("cells").get<std::vector<std::string>>();
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

const std::string& GoldenTable::cell(const std::string& row, int stage) const {
  auto it = rows.find(row);
  if (it == rows.end()) throw GoldenDataError(family.name() + ": no row " + row);
  for (std::size_t i = 0; i < stages.size(); ++i) {
    if (stages[i] == stage) return it->second.at(i);
  }
  throw GoldenDataError(family.name() + ": no stage " + std::to_string(stage));
}

const GoldenRecursion* GoldenData::recursion(const Family& family) const {
  return find_family(recursions, family);
}

const GoldenTable* GoldenData::table(const Family& family) const {
  return find_family(tables, family);
}

const GoldenGrowthConstant* GoldenData::growth_constant(const Family& family) const {
  return find_family(growth_constants, family);
}

std::filesystem::path resolve_data_dir(const std::optional<std::filesystem::path>& explicit_dir) {
  if (explicit_dir) return *explicit_dir;
  if (const char* env = std::getenv("SGFOREST_DATA_DIR"); env && *env) return env;
  return SGFOREST_DATA_DIR;
}

GoldenData load_golden(const std::filesystem::path& data_dir) {
  const auto dir = data_dir / "golden";
  GoldenData data;
  try {
    const Json recursions = read_json(dir / "recursions.json");
    for (const auto& f : recursions.at("families")) {
      GoldenRecursion rec;
      rec.family = family_of(f);
      rec.forest_next = f.at("forest_next").get<std::string>();
      if (f.contains("classes_next")) {
        for (const auto& [name, expr] : f.at("classes_next").items()) {
          rec.classes_next[name] = expr.get<std::string>();
        }
      }
      data.recursions.push_back(std::move(rec));
    }

    const Json tables_doc = read_json(dir / "tables.json");
    for (const auto& t : tables_doc.at("tables")) {
      GoldenTable table;
      table.family = family_of(t);
      table.stages = t.at("stages").get<std::vector<int>>();
      for (const auto& [name, cells] : t.at("rows").items()) {
        table.row_names.push_back(name);
        table.rows[name] = cells.get<std::vector<std::string>>();
        if (table.rows[name].size() != table.stages.size()) {
          throw GoldenDataError(table.family.name() + ": row " + name + " has wrong length");
        }
      }
      data.tables.push_back(std::move(table));
    }

    const Json constants = read_json(dir / "constants.json");
    for (const auto& g : constants.at("growth_constants")) {
      data.growth_constants.push_back({family_of(g), g.at("m").get<int>(),
                                       g.at("value").get<std::string>(),
                                       g.at("min_certified_digits").get<int>()});
    }
    for (const auto& v : constants.at("initial_vectors")) {
      auto& row = data.initial_vectors[v.at("d").get<int>()];
      for (const auto& [name, count] : v.at("counts").items()) row[name] = count.get<std::string>();
      row["f"] = v.at("f").get<std::string>();
    }
    for (const auto& c : constants.at("complete_graph_forests")) {
      data.complete_graph_forests[c.at("vertices").get<int>()] = c.at("forests").get<std::string>();
    }
    for (const auto& s : constants.at("spanning_tree_growth_constants")) {
      data.tree_constants[s.at("family").get<std::string>()] = s.at("value").get<std::string>();
    }
    const auto& tables = constants.at("bound_tables");
    data.bound_columns = tables.at("columns").get<std::vector<std::string>>();
    data.dimension_rows = bound_rows(tables.at("dimension_rows"), "d");
    data.side_length_rows = bound_rows(tables.at("side_length_rows"), "b");
    const auto& cert = constants.at("convergence_certificates").at(0);
    data.certificate_sg2_m3 = cert.at("approximately").get<std::string>();
    data.certificate_tolerance_factor = cert.at("tolerance_factor").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw GoldenDataError(std::string("malformed golden data: ") + e.what());
  }
  return data;
}

}  // namespace sgforest
