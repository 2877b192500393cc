#include "cli.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    const auto result = qcclab::cli::run(args);
    std::cout << result.out;
    std::cerr << result.err;
    return result.code;
}
