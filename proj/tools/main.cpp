#include "tfr/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return tfr::cli::run_command(argc, argv, std::cout, std::cerr); }
