#include "sublevel/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return sublevel::run_cli(argc, argv, std::cout, std::cerr); }
