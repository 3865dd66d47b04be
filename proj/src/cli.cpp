#include "sgforest/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "sgforest/evaluator.hpp"
#include "sgforest/golden.hpp"
#include "sgforest/growth.hpp"
#include "sgforest/oracle.hpp"
#include "sgforest/verify.hpp"

namespace sgforest {

namespace {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr int kLongPrecision = 100;
constexpr int kTableDigits = 40;

const std::vector<Family> kFamilies = {{2, 2}, {2, 3}, {2, 4}, {3, 2}, {4, 2}};

std::string format_or(const RunConfig& c, const std::string& fallback,
                      std::initializer_list<const char*> allowed) {
  const std::string f = c.format.empty() ? fallback : c.format;
  for (const char* a : allowed) {
    if (f == a) return f;
  }
  std::string list;
  for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
  throw ConfigError("format '" + f + "' is not available for this command (use " + list + ")");
}

void require_family(const Family& family) {
  if (!family.supported()) {
    throw ConfigError("unsupported family d=" + std::to_string(family.d) +
                      " b=" + std::to_string(family.b) +
                      " (supported: b=2 with d in 2..4, or d=2 with b in 2..4)");
  }
}

int precision_of(const RunConfig& c, const Family& family) {
  int p = c.precision.value_or(c.long_run ? kLongPrecision : default_precision(family));
  if (p < 11) throw ConfigError("--precision must be at least 11");
  return p;
}

void emit_json(std::ostream& out, const nlohmann::ordered_json& j) { out << j.dump(2) << '\n'; }

int cmd_derive(const RunConfig& c, std::ostream& out) {
  require_family(c.family);
  const std::string format = format_or(c, "json", {"json", "markdown"});
  const RecursionSystem system = derive(composition_schema(c.family), c.mode);
  if (format == "json") {
    emit_json(out, to_json(system));
  } else {
    const auto names = system.variable_names();
    out << "# " << system.family.name() << " recursions\n\n";
    for (std::size_t i = 0; i < system.classes.size(); ++i) {
      out << "- " << names[i] << "' = " << system.polynomials[i].to_string(names) << "\n";
    }
    out << "- rejected = " << system.rejected.to_string(names) << "\n";
  }
  return kExitOk;
}

int cmd_evaluate(const RunConfig& c, std::ostream& out) {
  require_family(c.family);
  const std::string format = format_or(c, "csv", {"csv", "json", "markdown"});
  const int stage = c.stage.value_or(default_max_stage(c.family));
  if (stage < 0) throw ConfigError("--stage must be non-negative");
  const RecursionSystem system = derive(composition_schema(c.family));
  const auto vectors = iterate(system, initial_vector(system), stage);
  if (format == "csv") {
    write_csv(out, system, vectors);
  } else if (format == "json") {
    emit_json(out, to_json(system, vectors));
  } else {
    write_markdown(out, system, vectors);
  }
  return kExitOk;
}

int cmd_bounds(const RunConfig& c, std::ostream& out) {
  require_family(c.family);
  const std::string format = format_or(c, "json", {"json", "markdown"});
  const int m = c.m.value_or(default_bound_stage(c.family));
  if (m < 0) throw ConfigError("--m must be non-negative");
  const int precision = precision_of(c, c.family);
  const RecursionSystem system = derive(composition_schema(c.family));
  const auto vectors = iterate(system, initial_vector(system), m);
  const BoundReport report = bounds(system, vectors, m, precision);
  if (format == "json") {
    emit_json(out, to_json(report));
  } else {
    write_markdown(out, report);
  }
  return kExitOk;
}

int cmd_tables(const RunConfig& c, std::ostream& out) {
  const std::string format = format_or(c, "markdown", {"markdown", "json"});
  const GoldenData golden = load_golden(resolve_data_dir(c.data_dir));
  std::map<std::string, Real> estimates;
  for (const Family& family : kFamilies) {
    const RecursionSystem system = derive(composition_schema(family));
    const int m = default_bound_stage(family);
    const auto vectors = iterate(system, initial_vector(system), m);
    estimates.emplace(family.name(), bounds(system, vectors, m, kTableDigits).z_estimate);
  }
  const RatioTable table = ratio_table(estimates, golden.tree_constants, kTableDigits);
  if (format == "json") {
    emit_json(out, to_json(table));
  } else {
    write_markdown(out, table);
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  require_family(c.family);
  const std::string format = format_or(c, "text", {"text", "json"});
  const GoldenData golden = load_golden(resolve_data_dir(c.data_dir));
  const std::vector<Check> checks = verify_family(c.family, golden);
  const bool all = std::all_of(checks.begin(), checks.end(), [](const Check& k) { return k.passed; });
  if (format == "json") {
    nlohmann::ordered_json j;
    j["family"] = c.family.name();
    j["passed"] = all;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& k : checks) {
      arr.push_back({{"name", k.name}, {"passed", k.passed}, {"detail", k.detail}});
    }
    j["checks"] = arr;
    emit_json(out, j);
  } else {
    for (const auto& k : checks) {
      out << (k.passed ? "PASS " : "FAIL ") << k.name << ": " << k.detail << '\n';
    }
    out << (all ? "all checks passed" : "verification FAILED") << '\n';
  }
  return all ? kExitOk : kExitVerification;
}

int cmd_oracle(const RunConfig& c, std::ostream& out) {
  format_or(c, "json", {"json"});
  ExplicitGraph graph;
  if (c.graph) {
    std::ifstream in(*c.graph);
    if (!in) throw ConfigError("cannot read graph file " + c.graph->string());
    try {
      graph = read_edge_list(in);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  } else {
    require_family(c.family);
    graph = explicit_graph(c.family, c.stage.value_or(1));
  }
  nlohmann::ordered_json j;
  if (graph.edges.size() <= kExhaustiveEdgeCap) {
    j = to_json(count_forests_by_class(graph));
    j["method"] = "exhaustive";
  } else {
    j["total"] = to_decimal(count_forests_memoized(graph));
    j["method"] = "memoized";
  }
  emit_json(out, j);
  return kExitOk;
}

int dispatch(const RunConfig& c, std::ostream& out) {
  switch (c.command) {
    case Command::Derive: return cmd_derive(c, out);
    case Command::Evaluate: return cmd_evaluate(c, out);
    case Command::Bounds: return cmd_bounds(c, out);
    case Command::Tables: return cmd_tables(c, out);
    case Command::Verify: return cmd_verify(c, out);
    case Command::Oracle: return cmd_oracle(c, out);
  }
  throw ConfigError("unknown command");
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ostringstream buffer;
  int status = kExitOk;
  try {
    status = dispatch(config, buffer);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const GoldenDataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const SizeCapExceeded& e) {
    err << "resource cap: " << e.what() << '\n';
    return kExitResource;
  } catch (const ResourceLimitExceeded& e) {
    err << "resource cap: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  if (config.out) {
    std::ofstream file(*config.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << config.out->string() << '\n';
      return kExitConfig;
    }
    file << buffer.str();
  } else {
    out << buffer.str();
  }
  return status;
}

int run_command_line(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spanning-forest recursions and growth constants on Sierpinski gaskets"};
  RunConfig config;
  std::string command;
  std::string mode = "fold";
  int d = 2;
  int b = 2;
  std::string out_path, data_dir, graph_path;

  const std::map<std::string, Command> commands = {
      {"derive", Command::Derive}, {"evaluate", Command::Evaluate}, {"bounds", Command::Bounds},
      {"tables", Command::Tables}, {"verify", Command::Verify},     {"oracle", Command::Oracle}};

  app.add_option("command", command, "derive | evaluate | bounds | tables | verify | oracle")
      ->required()
      ->check(CLI::IsMember({"derive", "evaluate", "bounds", "tables", "verify", "oracle"}));
  app.add_option("--d", d, "dimension");
  app.add_option("--b", b, "side length");
  app.add_option("--stage", config.stage, "last stage to evaluate");
  app.add_option("--m", config.m, "stage used for the bounds");
  app.add_option("--precision", config.precision, "reported significant digits (at least 11)");
  app.add_option("--format", config.format, "json | csv | markdown (text for verify)");
  app.add_option("--out", out_path, "write results to this file");
  app.add_option("--mode", mode, "derivation strategy")->check(CLI::IsMember({"fold", "naive"}));
  app.add_flag("--long", config.long_run, "bounds with 100 significant digits");
  app.add_option("--data", data_dir, "directory holding golden/*.json");
  app.add_option("--graph", graph_path, "edge-list file for the oracle command");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  config.command = commands.at(command);
  config.family = Family{d, b};
  config.mode = mode == "naive" ? DeriveMode::Naive : DeriveMode::Fold;
  if (!out_path.empty()) config.out = out_path;
  if (!data_dir.empty()) config.data_dir = data_dir;
  if (!graph_path.empty()) config.graph = graph_path;
  return run(config, out, err);
}

}  // namespace sgforest
