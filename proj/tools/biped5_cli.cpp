#include <iostream>

#include "biped5/cli.hpp"

int main(int argc, char** argv) { return biped5::run_cli(argc, argv, std::cout, std::cerr); }
