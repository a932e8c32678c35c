#include <iostream>

#include "parastat/cli.hpp"

int main(int argc, char** argv) { return parastat::run_cli(argc, argv, std::cout, std::cerr); }
