#include "fgv/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return fgv::parse_and_dispatch(argc, argv, std::cout, std::cerr); }
