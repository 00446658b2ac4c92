#include <iostream>

#include "sel/app/cli.hpp"

int main(int argc, char** argv) { return sel::app::run_cli(argc, argv, std::cout, std::cerr); }
