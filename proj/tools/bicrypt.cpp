#include <iostream>

#include "bicrypt/cli/app.hpp"

int main(int argc, char** argv) { return bicrypt::cli::run(argc, argv, std::cout, std::cerr); }
