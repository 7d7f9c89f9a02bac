#include <iostream>
#include <string>
#include <vector>

#include "handlecalc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return handlecalc::cli::run(args, std::cin, std::cout, std::cerr, handlecalc::cli::verbosity_from_env());
}
