#include "netrecon/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return netrecon::cli::run(argc, argv, std::cout, std::cerr); }
