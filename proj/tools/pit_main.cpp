#include <iostream>

#include "pit/cli.hpp"

int main(int argc, char** argv) {
    return pit::cli_main(argc, argv, std::cout, std::cerr);
}
