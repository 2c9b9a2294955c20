#include "coast/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return coast::run_cli(argc, argv, std::cout, std::cerr); }
