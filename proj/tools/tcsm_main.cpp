#include <iostream>
#include <vector>

#include "tcsm/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return tcsm::runCli(args, std::cout, std::cerr);
}
