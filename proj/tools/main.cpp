#include <iostream>
#include <string>
#include <vector>

#include "eulerprod/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return eulerprod::run_cli(args, std::cout, std::cerr);
}
