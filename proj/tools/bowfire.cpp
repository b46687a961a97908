#include <iostream>

#include "bowfire/cli.hpp"

int main(int argc, char** argv) { return bowfire::run_cli(argc, argv, std::cout, std::cerr); }
