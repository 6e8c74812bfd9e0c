#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "nuctrace/cli/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Trace, spectrum and norm experiments for nuclear Fourier integral operators"};
  app.require_subcommand(1);
  nuctrace::cli::RunOptions options;
  std::string config;
  for (const auto& verb : nuctrace::cli::kVerbs) {
    auto* sub = app.add_subcommand(verb);
    sub->add_option("--config", config, "scenario JSON file")->required();
    sub->add_option("--out", options.out_dir, "output directory");
    sub->add_option("--format", options.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--tolerance", options.tolerance, "verify tolerance");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : nuctrace::cli::kExitValidation;
  }
  const std::string verb = app.get_subcommands().front()->get_name();
  const int code = nuctrace::cli::run_verb(verb, config, options, std::cout);
  return code;
}
