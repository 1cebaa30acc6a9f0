#include <iostream>

#include "hilbert/cli.hpp"

int main(int argc, char** argv) { return hilbert::cli::run(argc, argv, std::cout, std::cerr); }
