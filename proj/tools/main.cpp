#include <iostream>

#include "m0n/cli/app.hpp"

int main(int argc, char** argv) { return m0n::run_cli(argc, argv, std::cout, std::cerr); }
