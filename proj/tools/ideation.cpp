#include <iostream>

#include "ideation/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ideation::run_command(args, std::cout, std::cerr);
}
