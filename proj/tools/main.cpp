#include "atdc/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return atdc::run_cli(argc, argv, std::cout, std::cerr); }
