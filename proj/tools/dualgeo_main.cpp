#include <iostream>
#include <string>
#include <vector>

#include "dualgeo/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return dualgeo::cli_main(args, std::cin, std::cout, std::cerr);
}
