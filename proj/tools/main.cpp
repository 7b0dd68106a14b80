#include <iostream>

#include "expcx/cli.hpp"

int main(int argc, char** argv) { return expcx::cli::run(argc, argv, std::cout, std::cerr); }
