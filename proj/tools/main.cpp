#include "modunits/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return modunits::cli::run(argc, argv, std::cout, std::cerr); }
