#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "criteria.hpp"

int main(int argc, char** argv) {
    toral::cli::set_selftest([](std::ostream& out) { return toral::acceptance::run_all(out); });
    return toral::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
