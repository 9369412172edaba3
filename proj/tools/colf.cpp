#include <iostream>

#include "colf/cli.hpp"

int main(int argc, char** argv) { return colf::cli::run(argc, argv, std::cout, std::cerr); }
