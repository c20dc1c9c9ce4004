#include <iostream>

#include "mvc/cli.hpp"

int main(int argc, char** argv) { return mvc::run_cli(argc, argv, std::cout, std::cerr); }
