#include <vector>

#include "opmcs/cli.hpp"

int main(int argc, char** argv) {
    return opmcs::cli_main(std::vector<std::string>(argv + 1, argv + argc));
}
