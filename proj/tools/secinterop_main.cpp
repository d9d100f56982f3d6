#include <iostream>
#include <string>
#include <vector>

#include "secinterop/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return secinterop::run(args, std::cout, std::cerr);
}
