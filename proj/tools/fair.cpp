#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

#include "fair/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return fair::cli::run_command(std::move(args), std::cout, std::cerr, std::cin, isatty(STDIN_FILENO) != 0);
}
