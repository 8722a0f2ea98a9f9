#include <iostream>

#include "barrierscope/cli.hpp"

int main(int argc, char** argv) {
  namespace cli = barrierscope::cli;
  std::optional<cli::RunConfig> config;
  try {
    std::string help;
    config = cli::parse_command_line(argc, argv, &help);
    if (!config) {
      std::cout << help;
      return cli::kSuccess;
    }
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return cli::kConfigError;
  }

  const cli::RunOutcome outcome = cli::run(*config);
  if (outcome.exit_code != cli::kSuccess) {
    std::cerr << outcome.error << "\n";
    return outcome.exit_code;
  }
  if (config->output.empty()) {
    std::cout << outcome.data;
    std::cerr << outcome.report;
  } else {
    std::cout << outcome.report;
  }
  return cli::kSuccess;
}
