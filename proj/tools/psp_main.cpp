#include "psp/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return psp::run_cli(argc, argv, std::cout, std::cerr); }
