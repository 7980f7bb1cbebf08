#include <iostream>

#include "heatsrc/cli.hpp"

int main(int argc, char** argv) { return heatsrc::cli::run_cli(argc, argv, std::cout, std::cerr); }
