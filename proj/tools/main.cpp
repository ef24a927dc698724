#include "aotoc/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return aotoc::dispatch(argc, argv, std::cout, std::cerr); }
