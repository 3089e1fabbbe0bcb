#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>

#include "commands.hpp"

using talbot::cli::ConfigError;
using talbot::cli::json;

int main(int argc, char** argv) {
  CLI::App app{"talbot: Schrodinger evolutions on tori and spheres, experiment driver"};
  app.set_version_flag("--version", std::string("talbot ") + TALBOT_VERSION);
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir = "talbot-out";
  bool force = false;
  app.add_option("--config", config_path, "JSON config; a section named after the subcommand is used if present")
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_flag("--force", force, "overwrite existing outputs");

  // One string slot per parameter; typed conversion happens after parsing.
  std::map<std::string, std::map<std::string, std::string>> raw;
  std::map<std::string, CLI::App*> subs;
  for (const auto& cmd : talbot::cli::commands()) {
    auto* sub = app.add_subcommand(cmd.name, cmd.help);
    subs[cmd.name] = sub;
    for (const auto& p : cmd.params) {
      std::string flag = "--" + p.key;
      for (auto& c : flag)
        if (c == '_') c = '-';
      std::string help = p.help;
      if (!p.fallback.is_null()) help += " [" + p.fallback.dump() + "]";
      // The dimension kind is also accepted positionally.
      if (cmd.name == "dimension" && p.key == "kind") {
        sub->add_option("kind," + flag, raw[cmd.name][p.key], help)
            ->check(CLI::IsMember({"torus-step", "torus-polygon", "zonal", "beam"}));
        continue;
      }
      sub->add_option(flag, raw[cmd.name][p.key], help);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const talbot::cli::Command* cmd = nullptr;
  for (auto& [name, sub] : subs)
    if (sub->parsed()) cmd = talbot::cli::find_command(name);
  if (!cmd) {
    std::cerr << app.help();
    return 2;
  }

  try {
    json doc;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      try {
        doc = json::parse(in);
      } catch (const json::parse_error& e) {
        throw ConfigError(config_path + ": " + e.what());
      }
    }
    std::map<std::string, std::string> flags;
    for (const auto& p : cmd->params) {
      auto& value = raw[cmd->name][p.key];
      if (!value.empty()) flags[p.key] = value;
    }
    const json cfg = talbot::cli::build_config(cmd->params, talbot::cli::select_section(doc, cmd->name), flags);
    return talbot::cli::execute(*cmd, cfg, out_dir, force, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
