#include "cli.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv)
{
    llec::cli::apply_thread_limit();
    std::vector<std::string> args(argv + 1, argv + argc);
    return llec::cli::run(args, std::cout, std::cerr);
}
