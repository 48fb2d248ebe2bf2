#include <iostream>

#include "hyperaudit/commands.hpp"

int main(int argc, char** argv) { return hyperaudit::run_cli(argc, argv, std::cout, std::cerr); }
