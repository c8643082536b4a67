#include <iostream>
#include <string>
#include <vector>

#include <cutjoin/cli.hpp>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cutjoin::run(std::move(args), std::cout, std::cerr);
}
