#include <iostream>

#include "swc/cli.hpp"

int main(int argc, char** argv) { return swc::cli_main(argc, argv, std::cout, std::cerr); }
