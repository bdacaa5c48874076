#include <iostream>

#include "aqf/cli.hpp"

int main(int argc, char** argv)
{
    return aqf::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
