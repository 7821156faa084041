#include <iostream>

#include "vcpoint/harness/cli.hpp"

int main(int argc, char** argv) { return vcpoint::harness::run_cli(argc, argv, std::cout, std::cerr); }
