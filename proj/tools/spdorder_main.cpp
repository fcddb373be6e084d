#include <iostream>

#include "spdorder/cli.hpp"

int main(int argc, char** argv) { return spdorder::cli::run(argc, argv, std::cout, std::cerr); }
