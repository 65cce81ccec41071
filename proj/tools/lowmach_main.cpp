#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "lowmach/config.hpp"
#include "lowmach/errors.hpp"

namespace {

constexpr const char* kUsage =
    "usage: lowmach run [--config FILE] [flags]\n"
    "       lowmach eoc [--config FILE] --grids N1,N2,... --reference N [flags]\n"
    "       lowmach <command> --help\n";

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << kUsage;
    return lowmach::kExitFailure;
  }
  const std::string command = argv[1];
  if (command == "--help" || command == "-h") {
    std::cout << kUsage;
    return lowmach::kExitOk;
  }
  const std::vector<std::string> args(argv + 2, argv + argc);
  try {
    const lowmach::RunConfig config = lowmach::parse_config(args);
    if (command == "run") return lowmach::run_single(config);
    if (command == "eoc") {
      lowmach::run_eoc(config);
      return lowmach::kExitOk;
    }
    std::cerr << "lowmach: unknown command '" << command << "'\n" << kUsage;
    return lowmach::kExitFailure;
  } catch (const lowmach::HelpRequested& help) {
    std::cout << help.what();
    return lowmach::kExitOk;
  } catch (const lowmach::ConfigError& e) {
    std::cerr << "lowmach: " << e.what() << '\n';
    return lowmach::kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "lowmach: " << e.what() << '\n';
    return lowmach::kExitFailure;
  }
}
