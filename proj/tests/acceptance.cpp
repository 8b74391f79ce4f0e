#include <iostream>

#include "qk/acceptance.hpp"

int main() { return qk::run_acceptance(std::cout) ? 0 : 1; }
