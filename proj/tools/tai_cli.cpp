// Binary entry point; all behaviour lives in tai::runCli so tests can drive
// the CLI in-process.

#include <iostream>
#include <string>
#include <vector>

#include "tai/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return tai::runCli(std::move(args), std::cin, std::cout, std::cerr);
}
