#include <iostream>
#include <string>
#include <vector>

#include "cutfrac/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cutfrac::run_cli(args, std::cout, std::cerr);
}
