// Command-line front end over the C API.
#include <CLI11.hpp>
#include <cstdio>
#include <string>

#include "quditchain/quditchain.h"

namespace {

void print_line(const char* line, void*) { std::printf("%s\n", line); }

int finish(qc_status s) {
  if (s != QC_OK)
    std::fprintf(stderr, "quditchain: %s: %s\n", qc_status_string(s), qc_last_error());
  return qc_exit_code(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qudit chain entanglement dynamics"};
  app.set_version_flag("--version", std::string(qc_version()));
  app.require_subcommand(1);

  std::string config;
  std::string engine;
  std::string out;
  auto* run = app.add_subcommand("run", "Run a scenario config file");
  run->add_option("--config", config, "Scenario file")->required();
  run->add_option("--engine", engine, "Override the engine")
      ->check(CLI::IsMember({"numeric", "analytic", "closedform", "crosscheck"}));
  run->add_option("--out", out, "Override the output prefix");

  auto* list = app.add_subcommand("list-scenarios", "List the named scenarios");
  auto* check = app.add_subcommand("check", "Run the built-in crosscheck suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (*run)
    return finish(qc_run_scenario_file(config.c_str(), engine.empty() ? nullptr : engine.c_str(),
                                       out.empty() ? nullptr : out.c_str(), print_line, nullptr));
  if (*list) {
    for (size_t i = 0; i < qc_scenario_count(); ++i)
      std::printf("%-12s %s\n", qc_scenario_name(i), qc_scenario_description(i));
    return 0;
  }
  if (*check) return finish(qc_check(print_line, nullptr));
  return 1;
}
