#include <iostream>

#include "leflab/harness.hpp"

int main(int argc, char** argv) { return leflab::cli_main(argc, argv, std::cout, std::cerr); }
