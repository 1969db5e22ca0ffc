#include <iostream>

#include "exactfd/cli.hpp"

int main(int argc, char** argv) { return exactfd::cli_main(argc, argv, std::cout, std::cerr); }
