#include <iostream>

#include "mtcs/cli.hpp"

int main(int argc, char** argv) { return mtcs::cli_main(argc, argv, std::cout, std::cerr); }
