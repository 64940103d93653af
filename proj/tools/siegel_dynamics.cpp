#include <iostream>

#include "siegel/cli.hpp"

int main(int argc, char** argv) {
    return siegel::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
