#include <iostream>

#include "psdb/cli.hpp"

int main(int argc, char** argv) { return psdb::cli::run(argc, argv, std::cout, std::cerr); }
