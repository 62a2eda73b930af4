#include <iostream>
#include <string>
#include <vector>

#include "dbcause/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto res = dbcause::cli::execute(args);
    std::cout << res.out;
    std::cerr << res.err;
    return res.exit_code;
}
