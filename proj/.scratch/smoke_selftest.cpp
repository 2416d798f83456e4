#include "hyb/selftest.hpp"

#include <cstdio>

using namespace hyb;

int main() {
    auto all = run_selftest("all", 80, 2026);
    bool ok = true;
    for (const auto& r : all) {
        std::printf("suite %-12s %3ld checks %ld failures %.2fs\n", r.name.c_str(), r.checks,
                    r.failures, r.seconds);
        for (const auto& n : r.notes)
            if (n.rfind("FAIL", 0) == 0) std::printf("  %s\n", n.c_str());
        ok = ok && r.pass();
    }
    auto cat = sdr_suite_catalog();
    std::printf("catalog entries: %zu\n", cat.size());
    if (cat.size() != 8) ok = false;
    for (const auto& e : cat) {
        auto t0 = std::chrono::steady_clock::now();
        auto rep = e.run(e.label == "Gn" ? 12 : 20, 1e-8, 99);
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("  %-9s pairs=%-5ld %s  %.2fs\n", e.label.c_str(), rep.pairs,
                    rep.pass() ? "pass" : ("FAIL " + rep.first_counterexample).c_str(), sec);
        ok = ok && rep.pass();
    }
    std::printf(ok ? "smoke_selftest: ok\n" : "smoke_selftest: FAILURES\n");
    return ok ? 0 : 1;
}
