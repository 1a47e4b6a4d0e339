// ietlab <command> --config <path> [--out <dir>]

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ietlab/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact experiments with interval exchange transformations"};
  std::string command, config_path, out_dir = ".";
  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(ietlab::cli_commands()));
  app.add_option("--config", config_path, "key=value configuration file")->required();
  app.add_option("--out", out_dir, "Output directory");
  CLI11_PARSE(app, argc, argv);

  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot read " << config_path << '\n';
    return ietlab::exit_parse;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    auto cfg = ietlab::parse_config(buf.str());
    return ietlab::run_command(command, cfg, out_dir, std::cout);
  } catch (const ietlab::ParseError& e) {
    std::cerr << config_path << ": " << e.what() << '\n';
    return ietlab::exit_parse;
  } catch (const ietlab::Error& e) {
    std::cerr << e.what() << '\n';
    return ietlab::exit_domain;
  }
}
