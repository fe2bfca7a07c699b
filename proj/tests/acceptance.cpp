#include "isochrone/battery.hpp"

#include <iostream>

int main() {
    using namespace isochrone;
    bool all = true;
    for (const auto& r : run_battery({1, 2, 3, 4, 5, 6, 7, 8, 9, 10})) {
        std::cout << format_line(r) << std::endl;
        all = all && r.passed;
    }
    std::cout << (all ? "acceptance: all criteria passed" : "acceptance: FAILED") << std::endl;
    return all ? 0 : 1;
}
