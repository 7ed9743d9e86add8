#include <iostream>

#include "cfx/cli.hpp"

int main(int argc, char** argv) { return cfx::run(argc, argv, std::cout, std::cerr); }
