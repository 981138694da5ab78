#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include "commands.hpp"
#include "wepkit/error.hpp"

namespace fs = std::filesystem;
using wep::cli::json;

namespace {

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw wep::ConfigError("cli::config", "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw wep::ConfigError("cli::config", path + ": " + e.what());
  }
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p);
  if (!out) throw wep::ConfigError("cli::output", "cannot write '" + p.string() + "'");
  out << content;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"wep: weighted empirical process toolkit"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  std::string out_dir = ".";
  bool dry_run = false;

  for (const auto& [name, help] : wep::cli::command_help()) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--seed", seed, "RNG seed (overrides the config)");
    sub->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", out_dir, "output directory");
    sub->add_flag("--dry-run", dry_run, "print the resolved plan and exit");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : wep::cli::kConfigError;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    wep::cli::Invocation inv{command, wep::cli::resolve(command, load_config(config_path), seed), workers};
    if (dry_run) {
      json plan = {{"command", command}, {"config", inv.config}, {"workers", workers}, {"out", out_dir}};
      std::cout << plan.dump(2) << "\n";
      return wep::cli::kOk;
    }
    const auto start = std::chrono::steady_clock::now();
    auto outcome = wep::cli::run(inv);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    json report = {{"command", command},
                   {"config", inv.config},
                   {"verdict", outcome.verdict},
                   {"metrics", outcome.metrics},
                   {"timing", {{"seconds", seconds}, {"workers", workers}}}};
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "report.json", report.dump(2) + "\n");
    for (const auto& t : outcome.tables) write_file(fs::path(out_dir) / t.name, t.content);
    std::cout << command << ": " << outcome.verdict << "\n";
    return outcome.code;
  } catch (const wep::DivergenceError& e) {
    std::cerr << e.what() << "\n";
    return wep::cli::kNumericalError;
  } catch (const wep::NumericalError& e) {
    std::cerr << e.what() << "\n";
    return wep::cli::kNumericalError;
  } catch (const wep::Error& e) {
    std::cerr << e.what() << "\n";
    return wep::cli::kConfigError;
  } catch (const json::exception& e) {
    std::cerr << "cli::config: " << e.what() << "\n";
    return wep::cli::kConfigError;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "cli::output: " << e.what() << "\n";
    return wep::cli::kConfigError;
  }
}
