#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sgforest/deriver.hpp"
#include "sgforest/topology.hpp"

namespace sgforest {

enum class Command { Derive, Evaluate, Bounds, Tables, Verify, Oracle };

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitVerification = 3,
  kExitResource = 4,
};

struct RunConfig {
  Command command = Command::Verify;
  Family family{2, 2};
  std::optional<int> stage;
  std::optional<int> m;
  std::optional<int> precision;
  std::string format;  // empty: the command's default
  std::optional<std::filesystem::path> out;
  DeriveMode mode = DeriveMode::Fold;
  bool long_run = false;
  std::optional<std::filesystem::path> data_dir;
  std::optional<std::filesystem::path> graph;  // oracle input edge list
};

// Runs one command. Results go to config.out when set, otherwise to `out`;
// diagnostics go to `err`. Returns an ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv into a RunConfig and runs it.
int run_command_line(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sgforest
