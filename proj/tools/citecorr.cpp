#include "citecorr/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return citecorr::run_cli(argc, argv, std::cout, std::cerr);
}
