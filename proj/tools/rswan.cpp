// Command-line front end: run a JSON config or the canned catalog.
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "rswan/error.hpp"
#include "rswan/run.hpp"

namespace {

int emit(const rswan::Json& report, const std::string& out) {
  const std::string text = report.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "rswan: cannot write " << out << "\n";
      return 2;
    }
    f << text;
  }
  return rswan::report_has_failures(report) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Swan conductors and refined Swan conductors of Artin-Schreier-Witt characters"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> precision;
  auto* run = app.add_subcommand("run", "Run the tasks of a JSON config");
  run->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Seed for randomized tasks (default: config seed, else 0)");
  run->add_option("--precision", precision, "Precision budget overriding every tower")->check(CLI::PositiveNumber);
  run->add_option("--out", out_path, "Write the report here instead of stdout");

  int p = 2;
  std::string check_out;
  std::optional<std::uint64_t> check_seed;
  auto* check = app.add_subcommand("check-all", "Run the canned catalog for one prime");
  check->add_option("--p", p, "Prime")->required()->check(CLI::IsMember({2, 3, 5}));
  check->add_option("--seed", check_seed, "Seed for randomized tasks");
  check->add_option("--out", check_out, "Write the report here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      std::ifstream in(config_path);
      rswan::Json config;
      try {
        config = rswan::Json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw rswan::ConfigError(std::string("invalid JSON: ") + e.what());
      }
      return emit(rswan::run_config(config, {seed, precision}), out_path);
    }
    return emit(rswan::check_all(p, {check_seed, std::nullopt}), check_out);
  } catch (const rswan::Error& e) {
    std::cerr << "rswan: " << e.kind() << ": " << e.what() << "\n";
    return 2;
  }
}
