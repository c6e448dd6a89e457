#include <iostream>

#include "amgate/cli.hpp"

int main(int argc, char** argv) { return amgate::cli::run(argc, argv, std::cout, std::cerr); }
