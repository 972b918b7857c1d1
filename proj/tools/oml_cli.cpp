#include <iostream>

#include "oml/cli.hpp"

int main(int argc, char** argv) { return oml::run_cli(argc, argv, std::cout, std::cerr); }
