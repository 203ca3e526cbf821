#include <iostream>

#include "qcong/engine/cli.hpp"

int main(int argc, char** argv) { return qcong::engine::cli_main(argc, argv, std::cout, std::cerr); }
