#include <iostream>
#include <string>
#include <vector>

#include "mvb/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return mvb::run(args, std::cout, std::cerr);
}
