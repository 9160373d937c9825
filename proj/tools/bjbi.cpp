#include <iostream>

#include "bjbi/cli.hpp"

int main(int argc, char** argv) { return bjbi::cli_main(argc, argv, std::cerr); }
