#include <iostream>

#include "sympext/cli/cli.hpp"

int main(int argc, char** argv) { return sympext::cli::run(argc, argv, std::cout, std::cerr); }
