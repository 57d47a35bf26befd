#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return deph::cli::run(argc, argv, std::cout, std::cerr); }
