#include <iostream>

#include "ingap/pipeline.hpp"

int main(int argc, char** argv) { return ingap::cli_main(argc, argv, std::cout, std::cerr); }
