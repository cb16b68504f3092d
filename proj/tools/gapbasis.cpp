#include <iostream>

#include "gapbasis/cli.hpp"

int main(int argc, char** argv) { return gapbasis::run_cli(argc, argv, std::cout, std::cerr); }
