#include <iostream>

#include "criteria.hpp"

int main() { return toral::acceptance::run_all(std::cout); }
