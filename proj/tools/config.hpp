#pragma once

// Experiment configuration: typed parameters merged from defaults, a JSON
// document and command line flags, in that order.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace talbot::cli {

using json = nlohmann::json;

enum class Kind { integer, real, text, integers, boolean };

struct Param {
  std::string key;
  Kind kind = Kind::real;
  json fallback;  // null means "chosen by the command"
  std::string help;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Section of a config document for one subcommand: doc[name] when present,
/// the whole document otherwise.
json select_section(const json& doc, const std::string& name);

/// Typed value from flag text. Throws ConfigError naming the key.
json parse_flag(const Param& p, const std::string& text);

/// Throws ConfigError naming the key when v does not match p.kind.
void check_type(const Param& p, const json& v);

/// defaults <- section <- flags. Unknown keys in the section are rejected.
json build_config(const std::vector<Param>& params, const json& section,
                  const std::map<std::string, std::string>& flags);

std::string sha256_hex(const std::string& bytes);

/// SHA-256 of the compact dump; keys are sorted, so equal configs hash equally.
std::string config_hash(const json& cfg);

}  // namespace talbot::cli
