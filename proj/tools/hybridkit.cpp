#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hybridkit/frontend/driver.hpp"

namespace {

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  text = buffer.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace hybridkit::frontend;

  CLI::App app{"Hybridised institutions: satisfaction, bisimulations and refinements"};
  app.require_subcommand(1);

  CheckOptions options;
  std::string file;
  std::string commands;

  auto* check = app.add_subcommand("check", "Run the commands of a .hyb file");
  check->add_option("file", file, "Input file")->required();
  check->add_option("--cmd", commands, "Commands to run instead of the ones in the file");
  check->add_flag("--json", options.json, "One JSON object per command");
  check->add_option("--depth", options.depth, "Default sentence depth for verify")->check(CLI::Range(0, 8));
  check->add_flag("--trace", options.trace, "Record the deletions of find-bisim / find-refine");

  auto* fmt = app.add_subcommand("fmt", "Print a .hyb file in canonical form");
  fmt->add_option("file", file, "Input file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  std::string text;
  if (!read_file(file, text)) {
    std::cerr << file << ": error: cannot read file\n";
    return kExitInputError;
  }
  options.filename = file;
  options.base_dir = std::filesystem::path(file).parent_path();
  if (check->parsed() && check->count("--cmd") > 0) options.commands = commands;

  if (fmt->parsed()) return run_format(options, text, std::cout, std::cerr);
  return run_check(options, text, std::cout, std::cerr);
}
