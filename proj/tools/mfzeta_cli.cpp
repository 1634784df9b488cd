// mfzeta: multifractal zeta-functions on graph-directed self-similar systems.
//
//   mfzeta <command> <config.json> [--n N] [--q Q] [--alpha A] [--radius R] [--out PATH]
//
// Commands: dim, tau, spectrum, zeta, fine, verify, parry.
// Exit codes: 0 ok, 2 configuration, 3 domain, 4 numerical.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mfzeta/cli_io.hpp"
#include "mfzeta/commands.hpp"
#include "mfzeta/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Multifractal zeta-functions on graph-directed self-similar systems"};
  std::string command;
  std::string config_path;
  std::string out_path;
  mfzeta::CommandOverrides overrides;
  app.add_option("command", command, "dim | tau | spectrum | zeta | fine | verify | parry")
      ->required()
      ->check(CLI::IsMember({"dim", "tau", "spectrum", "zeta", "fine", "verify", "parry"}));
  app.add_option("config", config_path, "JSON configuration file")->required();
  app.add_option("--n", overrides.n, "word length / truncation level");
  app.add_option("--q", overrides.q, "single q value");
  app.add_option("--alpha", overrides.alpha, "single alpha probe");
  app.add_option("--radius", overrides.radius, "ball radius for fine targets");
  app.add_option("--out", out_path, "output file (default: config output.path, else stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : mfzeta::kExitConfig;
  }

  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot read " << config_path << "\n";
    return mfzeta::kExitConfig;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  mfzeta::RunConfig config;
  try {
    config = mfzeta::parse_config(buffer.str());
  } catch (const mfzeta::Error& e) {
    std::cerr << e.what() << "\n";
    return mfzeta::exit_code_for(e);
  }

  const mfzeta::CommandResult result = mfzeta::run_command(command, config, overrides);
  if (result.exit_code != mfzeta::kExitOk) {
    std::cerr << result.error << "\n";
    return result.exit_code;
  }
  if (out_path.empty()) out_path = config.output.path;
  if (out_path.empty()) {
    std::cout << result.output;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << result.output;
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return mfzeta::kExitConfig;
    }
  }
  return mfzeta::kExitOk;
}
