// One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

#include <iostream>

#include "sphaera/cli.hpp"

int main() {
    const auto rows = sphaera::run_suite(std::cout);
    int failed = 0;
    for (const auto& r : rows) failed += r.pass ? 0 : 1;
    std::cout << rows.size() - failed << "/" << rows.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
