#include <iostream>
#include <string>
#include <vector>

#include "ifalab/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return ifalab::dispatch(args, std::cout, std::cerr);
}
