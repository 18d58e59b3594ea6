#include <iostream>

#include "woe/cli.hpp"

int main(int argc, char** argv) { return woe::cli::run(argc, argv, std::cout, std::cerr); }
