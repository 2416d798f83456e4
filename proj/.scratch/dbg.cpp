#include <cstdio>
#include <random>

#include "hyb/discs.hpp"

using namespace hyb;

int main() {
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int bad = 0;
    for (int i = 0; i < 2000; ++i) {
        CylinderCoord c{std::polar(u(rng), 6.283185307179586 * u(rng)), u(rng)};
        for (double delta : {0.3, 0.9, 1.0}) {
            auto x = g_delta<Rational>(c, delta);
            CylinderCoord back = g_delta_inverse(x, delta);
            double d = std::abs(back.w - c.w) + std::abs(back.s - c.s);
            if (d > 1e-9) {
                ++bad;
                if (bad < 12)
                    std::printf("delta=%.2f |w|=%.17g arg=%.4f s=%.17g  d=%.3e  back|w|=%.17g backs=%.17g  kind=%s\n",
                                delta, std::abs(c.w), std::arg(c.w), c.s, d, std::abs(back.w),
                                back.s, materialize(x).is_arch() ? "arch" : "triv");
            }
        }
    }
    std::printf("bad=%d\n", bad);
    return 0;
}
