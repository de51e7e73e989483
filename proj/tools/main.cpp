#include "quadext/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return quadext::run_cli(argc, argv, std::cout, std::cerr); }
