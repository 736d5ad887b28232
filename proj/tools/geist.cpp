#include <iostream>

#include "geist/cli.hpp"

int main(int argc, char** argv) { return geist::cli::run(argc, argv, std::cout, std::cerr); }
