#include <string>
#include <vector>

#include "vortexem/cli.hpp"

int main(int argc, char** argv) {
    return vortexem::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
