#include <iostream>
#include <string>
#include <vector>

#include "parking_lab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return parking_lab::cli::run(args, std::cout, std::cerr);
}
