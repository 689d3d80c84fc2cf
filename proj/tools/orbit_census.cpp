#include <iostream>

#include "orbitcensus/cli.hpp"

int main(int argc, char** argv) { return orbitcensus::main_entry(argc, argv, std::cout, std::cerr); }
