#include "mvxop/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return mvxop::cli::main(argc, argv, std::cout, std::cerr); }
