#include "rdslab/cli.hpp"

#include <iostream>

int main(int argc, char **argv) { return rdslab::run(argc, argv, std::cout, std::cerr); }
