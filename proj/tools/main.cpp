#include <iostream>

#include "voisel/cli.hpp"

int main(int argc, char** argv) {
    return voisel::cli::run_main(argc, argv, std::cout, std::cerr);
}
