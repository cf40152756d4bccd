#include <iostream>
#include <string>
#include <vector>

#include "foboson/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return foboson::cli::dispatch(args, std::cout, std::cerr);
}
