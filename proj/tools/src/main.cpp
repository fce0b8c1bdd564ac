#include <iostream>

#include "zsk_cli/commands.hpp"

int main(int argc, char** argv) { return zsk::cli::run(argc, argv, std::cout, std::cerr); }
