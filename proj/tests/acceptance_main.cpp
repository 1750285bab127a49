#include "acceptance_suite.hpp"

#include <iostream>

int main() {
    auto results = acceptance::run_all(std::cerr);
    int failed = 0;
    for (auto& r : results) {
        std::cout << acceptance::line(r) << "\n";
        failed += !r.pass;
    }
    std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
    return failed ? 1 : 0;
}
