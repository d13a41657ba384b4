#include <iostream>
#include <string>
#include <vector>

#include "lattice_heat/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return lattice_heat::cli::run(args, std::cout, std::cerr);
}
