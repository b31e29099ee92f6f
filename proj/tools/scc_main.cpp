#include <iostream>

#include "scc/cli.hpp"

int main(int argc, char** argv) {
    return scc::cli::run(argc, argv, std::cout, std::cerr);
}
