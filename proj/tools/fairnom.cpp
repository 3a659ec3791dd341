#include <iostream>

#include "fairnom/cli.hpp"

int main(int argc, char** argv) { return fairnom::cli::run(argc, argv, std::cout, std::cerr); }
