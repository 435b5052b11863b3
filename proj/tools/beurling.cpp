#include <iostream>

#include "beurling/cli.hpp"

int main(int argc, char** argv) { return beurling::cli::run(argc, argv, std::cout, std::cerr); }
