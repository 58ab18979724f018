#include "trirep/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return trirep::run_cli(argc, argv, std::cout, std::cerr); }
