#include <iostream>

#include "fockcalc/cli.hpp"

int main(int argc, char** argv) { return fockcalc::cli::main_with_args(argc, argv, std::cout, std::cerr); }
