#include <cstdio>

#include "selftest.hpp"

int main() {
    bool all = true;
    for (const auto& r : eternalbar::selftest::run_all()) {
        std::printf("criterion %d (%s): %s - %s [%.2f s]\n", r.id, r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.detail.c_str(), r.seconds);
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
