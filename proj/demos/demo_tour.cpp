// A guided tour: builds a few points on the hybrid affine line, evaluates
// seminorms, runs the retraction chain, and flows a torus point toward the
// skeleton. Output is narration, not a test; run it to see the shapes.
#include <cstdio>

#include "hyb/dedekind.hpp"
#include "hyb/json_io.hpp"
#include "hyb/retractions.hpp"

using namespace hyb;

int main() {
    using P = Polynomial<Rational>;

    std::puts("== points and seminorms ==");
    auto f = P({Rational(-1), Rational(0), Rational(1)});  // T^2 - 1
    auto x_arch = make_arch<Rational>({0.5, 0.0}, 0.5);
    auto x_triv = make_triv<Rational>(P::variable(), Rational(1, 2));
    std::printf("|T^2-1| at arch(z=1/2, t=1/2): %s\n",
                norm_value_text(seminorm(x_arch, f)).c_str());
    std::printf("|T^2-1| at triv(T, r=1/2):     %s\n",
                norm_value_text(seminorm(x_triv, f)).c_str());

    std::puts("\n== one retraction trajectory ==");
    auto g = make_global_sdr<Rational>(4);
    auto x0 = make_arch<Rational>({0.3, 0.4}, 0.8);
    for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        auto r = global_sdr(g, s, x0);
        auto y = materialize(r.pt);
        std::printf("  s=%.2f  lambda=%.6f  %s\n", s, lambda_of(y),
                    y.is_arch() ? "arch" : "non-arch");
    }

    std::puts("\n== toric flow toward the skeleton ==");
    auto spec = BaseRingSpec::hybrid_field(2);
    ToricPoint tp = make_gauss(0.6, {Rational(1, 3)}, {0.2});
    MultiPoly h = MultiPoly::zero(1);
    h.add_term({0}, Rational(1));
    h.add_term({2}, Rational(3));
    for (double t : {0.0, 0.5, 1.0})
        std::printf("  q(t=%.1f): |1+3T^2| = %.9f\n", t, q_eval(spec, t, tp, h));

    std::puts("\n== assembled retraction over the integers ==");
    auto line = make_integer_line_sdr(4);
    IntLinePoint ip = int_line_hybrid(make_arch<Rational>({0.7, 0.1}, 0.9));
    auto moved = assembled_sdr(line, 1.0, ip);
    std::printf("  endpoint JSON: %s\n", int_line_to_json(moved).dump().c_str());
    return 0;
}
