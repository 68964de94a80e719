#include <iostream>

#include "qtur/cli.hpp"

int main(int argc, char** argv) { return qtur::cli::run(argc, argv, std::cout, std::cerr); }
