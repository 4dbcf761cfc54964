#include "chtg/cli/app.hpp"

#include <iostream>

int main(int argc, char** argv) {
    chtg::cli::install_interrupt_handler();
    return chtg::cli::run(argc, argv, std::cout, std::cerr);
}
