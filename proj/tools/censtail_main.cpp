#include <iostream>
#include <string>
#include <vector>

#include "censtail/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return censtail::run_cli(args, std::cout, std::cerr);
}
