#include "knotsurg/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return knotsurg::cli::run(argc, argv, std::cout, std::cerr); }
