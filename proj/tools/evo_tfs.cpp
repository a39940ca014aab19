#include <string>
#include <vector>

#include "evotfs/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return evotfs::cli::run_cli(std::move(args));
}
