#include <iostream>
#include <string>
#include <vector>

#include "accel/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return accel::run_command(args, std::cout, std::cerr);
}
