#pragma once

#include <filesystem>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

namespace wep::cli {

using json = nlohmann::json;

enum ExitCode { kOk = 0, kStatFail = 1, kConfigError = 2, kNumericalError = 3 };

struct Csv {
  std::string name;
  std::string content;
};

struct Outcome {
  std::string verdict;
  json metrics = json::object();
  std::vector<Csv> tables;
  ExitCode code = kOk;
};

struct Invocation {
  std::string command;
  json config;
  unsigned workers = 1;
};

//! Fills in the seed, validates the config against the command's schema and
//! returns the resolved plan (what --dry-run prints). Throws ConfigError.
json resolve(const std::string& command, json config, std::optional<std::uint64_t> seed_flag);

Outcome run(const Invocation& inv);

bool known_command(const std::string& command);
const std::map<std::string, std::string>& command_help();

} // namespace wep::cli
