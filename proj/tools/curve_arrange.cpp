#include <iostream>

#include "curvearr/run_config.hpp"

int main(int argc, char** argv) { return curvearr::run_cli(argc, argv, std::cout, std::cerr); }
