#include "lj/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lj::cli_dispatch(std::move(args));
}
