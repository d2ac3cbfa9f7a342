#include <string>
#include <vector>

#include "pmm/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pmm::cli::run(args);
}
