#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace talbot::cli {

struct Outcome {
  json metrics = json::object();
  std::string csv;  // body, written after the provenance line
  bool pass = true;
  std::vector<std::pair<std::string, std::string>> extra;  // file suffix, contents
};

struct Command {
  std::string name;
  std::string help;
  std::vector<Param> params;
  std::function<Outcome(const json&)> run;
  /// File stem; defaults to the name.
  std::function<std::string(const json&)> stem;
};

const std::vector<Command>& commands();
const Command* find_command(const std::string& name);

/// Runs one command and writes <out>/<stem>.csv and <out>/<stem>.json.
/// Returns 0 on pass and 1 on tolerance failure. Existing outputs are kept
/// unless `force` is set (ConfigError).
int execute(const Command& cmd, const json& cfg, const std::filesystem::path& out, bool force,
            std::ostream& log);

}  // namespace talbot::cli
