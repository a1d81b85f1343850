#include <string>
#include <vector>

#include "fracmt/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return fracmt::cli::run(args);
}
