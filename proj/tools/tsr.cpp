#include <iostream>

#include "tsr/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return tsr::run(std::move(args), std::cout, std::cerr);
}
