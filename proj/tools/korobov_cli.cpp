#include <iostream>

#include "korobov/cli.hpp"

int main(int argc, char** argv) { return korobov::cli::main(argc, argv, std::cout, std::cerr); }
