#include <cassert>
#include <iostream>

#include "hyb/svg.hpp"

using namespace hyb;

static int checks = 0;
#define CHECK(c)                                                        \
    do {                                                                \
        ++checks;                                                       \
        if (!(c)) {                                                     \
            std::cerr << "FAIL line " << __LINE__ << ": " #c "\n";      \
            return 1;                                                   \
        }                                                               \
    } while (0)

static size_t count_sub(const std::string& hay, const std::string& needle) {
    size_t n = 0, pos = 0;
    while ((pos = hay.find(needle, pos)) != std::string::npos) {
        ++n;
        pos += needle.size();
    }
    return n;
}

int main() {
    // trivline N=5: exactly 5 branch paths plus the spine.
    RenderSpec tl;
    tl.subject = RenderSpec::Subject::TrivLine;
    tl.branches = 5;
    auto s1 = render_svg(tl);
    CHECK(count_sub(s1, "class=\"branch\"") == 5);
    CHECK(count_sub(s1, "<path") == 5);
    CHECK(count_sub(s1, "class=\"spine\"") == 1);
    CHECK(s1.find("T^2") == std::string::npos);  // first five irreducibles are linear

    // determinism: identical spec twice is byte-identical.
    CHECK(render_svg(tl) == s1);

    RenderSpec tl1 = tl;
    tl1.branches = 1;
    CHECK(count_sub(render_svg(tl1), "class=\"branch\"") == 1);

    // spectrumZ bound 12: primes 2,3,5,7,11 plus one arch ray.
    RenderSpec sp;
    sp.subject = RenderSpec::Subject::SpectrumZ;
    sp.branches = 12;
    auto s2 = render_svg(sp);
    CHECK(count_sub(s2, "class=\"prime\"") == 5);
    CHECK(count_sub(s2, "class=\"arch\"") == 1);
    CHECK(render_svg(sp) == s2);
    CHECK(s2.find(">11<") != std::string::npos && s2.find(">inf<") != std::string::npos);

    // disc: both membership classes appear, every cell classified, skeleton
    // and boundary overlays present.
    RenderSpec dc;
    dc.subject = RenderSpec::Subject::Disc;
    auto s3 = render_svg(dc);
    CHECK(count_sub(s3, "class=\"rD\"") > 0);
    CHECK(count_sub(s3, "class=\"rOut\"") > 0);
    CHECK(count_sub(s3, "class=\"rD\"") + count_sub(s3, "class=\"rOut\"") == 24 * 24);
    CHECK(count_sub(s3, "class=\"skeleton\"") == 1);
    CHECK(count_sub(s3, "class=\"boundary\"") == 1);
    CHECK(render_svg(dc) == s3);

    // three-decimal fixed formatting only (no long doubles leaking through)
    CHECK(s1.find("0.0000") == std::string::npos);

    bool threw = false;
    try {
        RenderSpec bad;
        bad.branches = 0;
        render_svg(bad);
    } catch (const DomainError& e) {
        threw = std::string(e.code) == "BadBranchCount";
    }
    CHECK(threw);

    std::cout << "smoke_svg: " << checks << " checks passed\n";
    return 0;
}
