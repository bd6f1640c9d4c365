#include <iostream>

#include "holonomy/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return holo::runCli(args, std::cout, std::cerr);
}
