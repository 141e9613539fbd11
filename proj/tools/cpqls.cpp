#include <iostream>

#include "cpqls/cli/app.hpp"

int main(int argc, char** argv) { return cpqls::cli::run(argc, argv, std::cout, std::cerr); }
