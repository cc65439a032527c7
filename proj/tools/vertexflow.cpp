#include <iostream>

#include <vertexflow/cli.hpp>

int main(int argc, char **argv) { return vertexflow::cli_main(argc, argv, std::cout, std::cerr); }
