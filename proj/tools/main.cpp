#include <cstdlib>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::filesystem::path> patterns_env;
  if (const char* env = std::getenv("GQMS_PATTERNS"); env != nullptr && *env != '\0') patterns_env = env;
  return gqms::run_cli(args, std::cout, std::cerr, patterns_env);
}
