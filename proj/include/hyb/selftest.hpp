#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hyb/dedekind.hpp"
#include "hyb/discs.hpp"
#include "hyb/irreducibles.hpp"
#include "hyb/lifting.hpp"
#include "hyb/oracles.hpp"
#include "hyb/probes.hpp"
#include "hyb/retractions.hpp"
#include "hyb/toric.hpp"

namespace hyb {

struct SuiteResult {
    std::string name;
    long checks = 0;
    long failures = 0;
    double seconds = 0.0;
    std::vector<std::string> notes;
    bool pass() const { return failures == 0; }
};

namespace detail {

template <class K>
Polynomial<K> random_poly(std::mt19937_64& rng, int max_degree, bool nonzero = true) {
    std::uniform_int_distribution<int> deg(0, max_degree), num(-4, 4), den(1, 2);
    int d = deg(rng);
    std::vector<K> c(static_cast<size_t>(d) + 1);
    for (auto& a : c) a = K(Rational(num(rng), den(rng)));
    Polynomial<K> f(std::move(c));
    if (nonzero && f.is_zero()) return random_poly<K>(rng, max_degree, nonzero);
    return f;
}

inline NormValue nv_mul(const NormValue& a, const NormValue& b) {
    if (a.exact && b.exact) return NormValue::from_rational(a.q * b.q);
    return NormValue::from_double(a.v * b.v);
}

inline double rel_diff(double a, double b) {
    double den = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) / den;
}

template <class K>
std::string show_hybrid(const HybridPoint<K>& x0) {
    HybridPoint<K> x = materialize(x0);
    std::ostringstream os;
    if (x.is_arch())
        os << "arch(z=" << x.arch().z.real() << "+" << x.arch().z.imag()
           << "i, t=" << x.arch().t << ")";
    else
        os << "triv(deg p=" << x.triv().p.degree() << ", r=" << x.triv().r << ")";
    return os.str();
}

inline std::string show_toric(const ToricPoint& x) {
    std::ostringstream os;
    if (const auto* g = std::get_if<GaussPoint>(&x)) {
        os << "gauss(rho=" << g->rho << ", radii=";
        for (double r : g->radii) os << r << ",";
        os << " centers=";
        for (const auto& c : g->center) os << c << ",";
        os << ")";
    } else {
        os << "derived(" << std::get<DerivedToric>(x).op << ")";
    }
    return os.str();
}

inline bool same_base(const BasePoint& a, const BasePoint& b) {
    if (a.index() != b.index()) return false;
    if (const auto* pa = std::get_if<PrimeBranch>(&a)) {
        const auto& pb = std::get<PrimeBranch>(b);
        return pa->p == pb.p && pa->c == pb.c;
    }
    if (const auto* aa = std::get_if<ArchBranch>(&a)) {
        const auto& ab = std::get<ArchBranch>(b);
        return aa->sigma == ab.sigma && aa->rho == ab.rho;
    }
    return true;
}

inline std::string show_base(const BasePoint& z) {
    std::ostringstream os;
    if (const auto* pb = std::get_if<PrimeBranch>(&z))
        os << "prime(" << pb->p << ", c=" << pb->c << ")";
    else if (std::holds_alternative<TrivialBase>(z))
        os << "trivial";
    else
        os << "arch(rho=" << std::get<ArchBranch>(z).rho << ")";
    return os.str();
}

inline std::string show_int_line(const IntLinePoint& x) {
    if (const auto* h = std::get_if<PointQ>(&x)) return "hyb " + show_hybrid(*h);
    const auto& gf = std::get<GaussFiber>(x);
    return "fiber(p=" + std::to_string(gf.spec.p) + ") " + show_toric(gf.pt);
}

}  // namespace detail

// -------------------------------------------------------------------------
// Samplers for the axiom suites. The distances reuse each model's probe
// metric so membership and movement are judged by the same family.

inline AxiomSampler<CylinderCoord> cylinder_axiom_sampler() {
    AxiomSampler<CylinderCoord> s;
    s.draw = [](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        return CylinderCoord{std::polar(u(rng), 6.283185307179586 * u(rng)), u(rng)};
    };
    s.distance = [](const CylinderCoord& a, const CylinderCoord& b) {
        return std::abs(a.w - b.w) + std::abs(a.s - b.s);
    };
    s.describe = [](const CylinderCoord& c) {
        std::ostringstream os;
        os << "(|w|=" << std::abs(c.w) << ", s=" << c.s << ")";
        return os.str();
    };
    return s;
}

template <class K>
AxiomSampler<HybridPoint<K>> hybrid_axiom_sampler(double lambda_cap = 1.0) {
    AxiomSampler<HybridPoint<K>> s;
    s.draw = [lambda_cap](std::mt19937_64& rng) {
        HybridPoint<K> x = sample_hybrid_point<K>(rng);
        HybridPoint<K> m = materialize(x);
        if (m.is_arch() && m.arch().t > lambda_cap)
            return make_arch<K>(m.arch().z, lambda_cap * std::max(0.05, m.arch().t * 0.5));
        return x;
    };
    s.distance = [](const HybridPoint<K>& a, const HybridPoint<K>& b) {
        return probe_distance(a, b);
    };
    s.describe = [](const HybridPoint<K>& x) { return detail::show_hybrid(x); };
    return s;
}

// Mix of near-axis Archimedean points, generic points, and branch points, so
// the per-disc suites actually exercise the moving region.
template <class K>
AxiomSampler<HybridPoint<K>> gn_axiom_sampler(const Polynomial<K>& p, double delta) {
    auto roots = std::make_shared<const std::vector<std::complex<double>>>(roots_numeric(p));
    AxiomSampler<HybridPoint<K>> s;
    s.draw = [roots, delta](std::mt19937_64& rng) -> HybridPoint<K> {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::uniform_int_distribution<int> kind(0, 4);
        int k = kind(rng);
        if (k <= 2) {
            const auto& z0 = (*roots)[rng() % roots->size()];
            std::complex<double> z = z0 + std::polar(0.35 * u(rng), 6.283185307179586 * u(rng));
            return make_arch<K>(z, delta * (0.02 + 0.96 * u(rng)));
        }
        if (k == 3) return sample_arch_point<K>(rng);
        return sample_triv_point<K>(rng);
    };
    s.distance = [](const HybridPoint<K>& a, const HybridPoint<K>& b) {
        return probe_distance(a, b);
    };
    s.describe = [](const HybridPoint<K>& x) { return detail::show_hybrid(x); };
    return s;
}

inline AxiomSampler<ToricPoint> gauss_axiom_sampler(const BaseRingSpec& spec, bool center_zero) {
    AxiomSampler<ToricPoint> s;
    long p = spec.p;
    s.draw = [center_zero, p](std::mt19937_64& rng) {
        std::uniform_int_distribution<int> ci(0, 4), ri(0, 4), hi(center_zero ? 0 : 1, 4);
        const Rational cs[5] = {Rational(0), Rational(1), Rational(-1), Rational(p), Rational(2)};
        const double rs[5] = {0.0, 0.25, 0.5, 1.0, 2.0};
        Rational c = center_zero ? Rational(0) : cs[ci(rng)];
        return ToricPoint(make_gauss(hi(rng) * 0.25, {c}, {rs[ri(rng)]}));
    };
    s.distance = [spec](const ToricPoint& a, const ToricPoint& b) {
        return toric_probe_distance(spec, a, b);
    };
    s.describe = [](const ToricPoint& x) { return detail::show_toric(x); };
    return s;
}

inline AxiomSampler<BasePoint> base_axiom_sampler() {
    AxiomSampler<BasePoint> s;
    s.draw = [](std::mt19937_64& rng) { return sample_base_point(rng, false); };
    s.distance = [](const BasePoint& a, const BasePoint& b) { return base_distance(a, b); };
    s.describe = [](const BasePoint& z) { return detail::show_base(z); };
    return s;
}

inline AxiomSampler<IntLinePoint> int_line_axiom_sampler() {
    AxiomSampler<IntLinePoint> s;
    s.draw = [](std::mt19937_64& rng) { return sample_int_line_point(rng); };
    s.distance = [](const IntLinePoint& a, const IntLinePoint& b) {
        return int_line_distance(a, b);
    };
    s.describe = [](const IntLinePoint& x) { return detail::show_int_line(x); };
    return s;
}

// -------------------------------------------------------------------------
// The eight SDR suites. Each entry runs one named homotopy family through
// sdr_axiom_suite; the per-disc entry folds its four branch polynomials into
// one merged report.

inline AxiomReport merge_reports(AxiomReport a, const AxiomReport& b) {
    a.samples += b.samples;
    a.pairs += b.pairs;
    a.identity_fail += b.identity_fail;
    a.target_fail += b.target_fail;
    a.fixed_fail += b.fixed_fail;
    a.stopping_fail += b.stopping_fail;
    if (a.first_counterexample.empty()) a.first_counterexample = b.first_counterexample;
    return a;
}

struct SdrSuiteEntry {
    std::string label;
    std::function<AxiomReport(int trials, double tol, unsigned seed)> run;
};

inline std::vector<SdrSuiteEntry> sdr_suite_catalog() {
    using PolyQ = Polynomial<Rational>;
    using PolyG = Polynomial<GaussRational>;
    std::vector<SdrSuiteEntry> cat;
    cat.push_back({"cylinder", [](int n, double tol, unsigned s) {
                       return sdr_axiom_suite(cylinder_homotopy(), cylinder_axiom_sampler(), n,
                                              tol, s);
                   }});
    cat.push_back({"rz", [](int n, double tol, unsigned s) {
                       return sdr_axiom_suite(rz_homotopy<Rational>(Rational(2)),
                                              hybrid_axiom_sampler<Rational>(), n, tol, s);
                   }});
    cat.push_back({"R", [](int n, double tol, unsigned s) {
                       return sdr_axiom_suite(squeeze_homotopy<Rational>(0.25, 0.0625),
                                              hybrid_axiom_sampler<Rational>(0.25), n, tol, s);
                   }});
    cat.push_back({"Gn", [](int n, double tol, unsigned s) {
                       int per = std::max(2, n / 4);
                       AxiomReport rep;
                       rep.homotopy = "Gn";
                       int i = 0;
                       for (const PolyQ& p :
                            {PolyQ::variable(), PolyQ::linear_root(Rational(1)),
                             PolyQ({Rational(-2), Rational(0), Rational(1)})}) {
                           double d = std::min(delta_threshold(p), 0.25);
                           rep = merge_reports(rep, sdr_axiom_suite(gn_homotopy<Rational>(p, d),
                                                                    gn_axiom_sampler(p, d), per,
                                                                    tol, s + 11u * i++));
                       }
                       PolyG pg({GaussRational(Rational(1)), GaussRational(Rational(0)),
                                 GaussRational(Rational(1))});
                       double dg = std::min(delta_threshold(pg), 0.25);
                       rep = merge_reports(
                           rep, sdr_axiom_suite(gn_homotopy<GaussRational>(pg, dg),
                                                gn_axiom_sampler(pg, dg), per, tol, s + 101u));
                       return rep;
                   }});
    cat.push_back({"q", [](int n, double tol, unsigned s) {
                       auto spec = BaseRingSpec::hybrid_field(3);
                       return sdr_axiom_suite(q_homotopy(spec, 1),
                                              gauss_axiom_sampler(spec, false), n, tol, s);
                   }});
    cat.push_back({"J", [](int n, double tol, unsigned s) {
                       auto spec = BaseRingSpec::hybrid_field(3);
                       return sdr_axiom_suite(j_homotopy(spec, 1),
                                              gauss_axiom_sampler(spec, true), n, tol, s);
                   }});
    cat.push_back({"rt", [](int n, double tol, unsigned s) {
                       return sdr_axiom_suite(r_homotopy(), base_axiom_sampler(), n, tol, s);
                   }});
    cat.push_back({"Z", [](int n, double tol, unsigned s) {
                       return sdr_axiom_suite(make_integer_line_sdr(4).full,
                                              int_line_axiom_sampler(), n, tol, s);
                   }});
    return cat;
}

// -------------------------------------------------------------------------
// Named selftest suites behind the CLI and the test binaries.

namespace detail {

class SuiteRecorder {
  public:
    explicit SuiteRecorder(SuiteResult& res) : res_(res), t0_(std::chrono::steady_clock::now()) {}
    void note(bool ok, const std::string& label, const std::string& witness = "") {
        ++res_.checks;
        if (ok) {
            res_.notes.push_back("ok " + label);
        } else {
            ++res_.failures;
            res_.notes.push_back("FAIL " + label + (witness.empty() ? "" : ": " + witness));
        }
    }
    void bulk(long trials, long bad, const std::string& label, const std::string& witness = "") {
        std::ostringstream os;
        os << label << " (" << trials << " trials)";
        note(bad == 0, os.str(), witness);
    }
    void axiom(const AxiomReport& rep, const std::string& label) {
        std::ostringstream os;
        os << label << " (" << rep.pairs << " (t,x) pairs)";
        note(rep.pass(), os.str(), rep.first_counterexample);
    }
    void finish() {
        res_.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

  private:
    SuiteResult& res_;
    std::chrono::steady_clock::time_point t0_;
};

}  // namespace detail

inline SuiteResult selftest_points(long trials, unsigned seed) {
    SuiteResult res{"points"};
    detail::SuiteRecorder rec(res);
    std::mt19937_64 rng(seed);

    {  // multiplicativity across the primitive kinds, both base fields
        long bad = 0;
        std::string w;
        for (long i = 0; i < trials; ++i) {
            bool gauss_field = (i % 2) == 1;
            bool ok = true;
            if (!gauss_field) {
                PointQ x = sample_hybrid_point<Rational>(rng);
                auto f = detail::random_poly<Rational>(rng, 4);
                auto g = detail::random_poly<Rational>(rng, 4);
                NormValue lhs = seminorm(x, f * g);
                NormValue rhs = detail::nv_mul(seminorm(x, f), seminorm(x, g));
                ok = materialize(x).is_triv() ? norm_close(lhs, rhs, 0.0)
                                              : detail::rel_diff(lhs.v, rhs.v) <= 1e-10;
                if (!ok) w = detail::show_hybrid(x);
            } else {
                PointQi x = sample_hybrid_point<GaussRational>(rng);
                auto f = detail::random_poly<GaussRational>(rng, 4);
                auto g = detail::random_poly<GaussRational>(rng, 4);
                NormValue lhs = seminorm(x, f * g);
                NormValue rhs = detail::nv_mul(seminorm(x, f), seminorm(x, g));
                ok = materialize(x).is_triv() ? norm_close(lhs, rhs, 0.0)
                                              : detail::rel_diff(lhs.v, rhs.v) <= 1e-10;
                if (!ok) w = detail::show_hybrid(x);
            }
            if (!ok) ++bad;
        }
        rec.bulk(trials, bad, "seminorm multiplicativity", w);
    }

    {  // eta oracle agreement spot check
        auto irr = enumerate_irreducibles<Rational>(8);
        long n = std::min<long>(trials, 120), bad = 0;
        const Rational rr[4] = {Rational(0), Rational(3, 10), Rational(1), Rational(2)};
        const double rd[4] = {0.0, 0.3, 1.0, 2.0};
        for (long i = 0; i < n; ++i) {
            const auto& p = irr[static_cast<size_t>(rng() % irr.size())].first;
            auto f = detail::random_poly<Rational>(rng, 5) *
                     irr[static_cast<size_t>(rng() % irr.size())].first;
            size_t k = static_cast<size_t>(i) % 4;
            double closed = eval_trivial(TrivPoint<Rational>{p, rr[k], IrrFlag::Certified}, f).v;
            double orac = taylor_norm_oracle(f, p, rd[k]).v;
            if (detail::rel_diff(closed, orac) > 1e-8) ++bad;
        }
        rec.bulk(n, bad, "eta closed form vs taylor oracle");
    }

    {  // r >= 1 canonicalization and pinned closed forms
        auto T = Polynomial<Rational>::variable();
        Polynomial<Rational> t2m2({Rational(-2), Rational(0), Rational(1)});
        long bad = 0;
        for (long i = 0; i < 100; ++i) {
            auto f = detail::random_poly<Rational>(rng, 5);
            NormValue v = seminorm(make_triv<Rational>(t2m2, Rational(1)), f);
            if (!(v.exact && v.q == (f.is_zero() ? Rational(0) : Rational(1)))) ++bad;
        }
        rec.bulk(100, bad, "|.|_{p,1} is the trivial norm");
        rec.note(seminorm(make_triv<Rational>(t2m2, Rational(1, 2)), t2m2).q == Rational(1, 2),
                 "eta_{T^2-2,1/2}(T^2-2) = 1/2");
        rec.note(seminorm(make_triv<Rational>(T, Rational(2)), T * T * T).q == Rational(8),
                 "r>1 branch r^{deg}");
    }

    {  // scalar extension roundtrip on probes
        long n = std::min<long>(trials, 150), bad = 0;
        for (long i = 0; i < n; ++i) {
            PointQ x = sample_hybrid_point<Rational>(rng);
            PointQ back = restrict_scalars(extend_scalars(x));
            if (probe_distance(x, back) > 1e-9) ++bad;
        }
        rec.bulk(n, bad, "restrict_scalars . extend_scalars = id");
    }

    rec.finish();
    return res;
}

inline SuiteResult selftest_discs(long trials, unsigned seed) {
    SuiteResult res{"discs"};
    detail::SuiteRecorder rec(res);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    // Forward images with (1/t - 1) ln|w| below -650 underflow doubles (the
    // bottom of the cylinder collapses), so roundtrip draws stay representable.
    auto draw_cyl = [&u](std::mt19937_64& r, double delta) {
        while (true) {
            CylinderCoord c{std::polar(u(r), 6.283185307179586 * u(r)), u(r)};
            double aw = std::abs(c.w), t = delta * c.s;
            if (c.s == 0.0 || aw == 0.0 || (1.0 / t - 1.0) * std::log(aw) >= -650.0) return c;
        }
    };

    for (double delta : {0.3, 0.9, 1.0}) {  // coordinate roundtrip, both directions
        long bad = 0, bad2 = 0;
        for (long i = 0; i < trials; ++i) {
            CylinderCoord c = draw_cyl(rng, delta);
            PointQ x = g_delta<Rational>(c, delta);
            CylinderCoord back = g_delta_inverse(x, delta);
            if (std::abs(back.w - c.w) + std::abs(back.s - c.s) > 1e-9) ++bad;
            PointQ again = g_delta<Rational>(back, delta);
            if (probe_distance(x, again) > 1e-9) ++bad2;
        }
        std::ostringstream os;
        os << "g_delta roundtrip (delta=" << delta << ")";
        rec.bulk(trials, bad, os.str());
        std::ostringstream os2;
        os2 << "inverse then forward fixes disc points (delta=" << delta << ")";
        rec.bulk(trials, bad2, os2.str());
    }

    {  // cylinder boundary lands in E
        auto spec = DiscSpec<Rational>::finite(Polynomial<Rational>::variable(), 0.9);
        long n = std::min<long>(trials, 200), bad = 0;
        for (long i = 0; i < n; ++i) {
            CylinderCoord c{std::polar(1.0, 6.283185307179586 * u(rng)), u(rng)};
            if (!region_member(g_delta<Rational>(c, 0.9), spec, RegionTag::E, 1e-9)) ++bad;
        }
        rec.bulk(n, bad, "boundary |w|=1 maps into E_k(delta)");
    }

    {  // region nesting N => N+ => D
        auto spec = DiscSpec<Rational>::finite(Polynomial<Rational>::variable(), 0.8);
        long bad = 0;
        for (long i = 0; i < trials; ++i) {
            PointQ x = sample_hybrid_point<Rational>(rng);
            bool inn = region_member(x, spec, RegionTag::N);
            bool inp = region_member(x, spec, RegionTag::Nplus);
            bool ind = region_member(x, spec, RegionTag::D);
            if ((inn && !inp) || (inp && !ind)) ++bad;
        }
        rec.bulk(trials, bad, "region nesting N in N+ in D");
    }

    rec.axiom(sdr_axiom_suite(cylinder_homotopy(), cylinder_axiom_sampler(),
                              static_cast<int>(std::min<long>(trials, 200)), 1e-8, seed + 1),
              "cylinder SDR axioms");
    rec.axiom(sdr_axiom_suite(infinity_cylinder_homotopy(), cylinder_axiom_sampler(),
                              static_cast<int>(std::min<long>(trials, 200)), 1e-8, seed + 2),
              "punctured cylinder SDR axioms");

    rec.finish();
    return res;
}

inline SuiteResult selftest_retractions(long trials, unsigned seed) {
    SuiteResult res{"retractions"};
    detail::SuiteRecorder rec(res);
    std::mt19937_64 rng(seed);

    int n = static_cast<int>(std::min<long>(trials, 120));
    for (const auto& entry : sdr_suite_catalog()) {
        if (entry.label == "q" || entry.label == "J" || entry.label == "rt" ||
            entry.label == "Z")
            continue;  // covered by the toric and dedekind suites
        int nn = entry.label == "Gn" ? std::max(8, n / 3) : n;
        rec.axiom(entry.run(nn, 1e-8, seed + 7), "SDR axioms: " + entry.label);
    }

    {  // truncation identity of the global schedule, bitwise
        auto g = make_global_sdr<Rational>(4);
        long bad = 0, count = 0;
        for (long i = 0; i < std::min<long>(trials, 40); ++i) {
            PointQ x = sample_hybrid_point<Rational>(rng);
            for (int k = 0; k + 1 < static_cast<int>(g.stages.size()); ++k) {
                double tcut = 1.0 - std::ldexp(1.0, -(k + 1));
                auto a = g.truncated_chain(k + 1).eval(tcut, x);
                auto b = g.truncated_chain(k).eval(1.0, x);
                ++count;
                if (probe_distance(a, b) != 0.0) ++bad;
            }
        }
        rec.bulk(count, bad, "schedule truncation identity");
    }

    {  // lifting deviation through the degree-2 cover T -> T^2
        Polynomial<Rational> p2({Rational(0), Rational(0), Rational(1)});
        double del = 0.25;
        auto base = model_disc_homotopy<Rational>(del);
        auto spec = DiscSpec<Rational>::finite(Polynomial<Rational>::variable(), del);
        auto ctx = make_lift_context(p2);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        long nlift = std::min<long>(trials, 25), bad = 0, used = 0;
        double worst = 0.0;
        for (long i = 0; i < nlift; ++i) {
            std::complex<double> z = std::polar(0.08 + 0.82 * u(rng), 6.28318530718 * u(rng));
            auto x = make_arch<Rational>(z, del * (0.05 + 0.9 * u(rng)));
            auto py = phi_cover(p2, materialize(x));
            if (!region_member(py, spec, RegionTag::D)) continue;
            ++used;
            auto traj = lift_homotopy(ctx, base, materialize(x));
            double t = 0.05 + 0.95 * u(rng);
            double dev =
                probe_distance(phi_cover(p2, traj(t)), materialize(base.eval(t, py)));
            worst = std::max(worst, dev);
            if (dev > 1e-6) ++bad;
        }
        std::ostringstream os;
        os << "cover compatibility of the lifted flow (worst " << worst << ")";
        rec.bulk(used, bad, os.str());
    }

    rec.finish();
    return res;
}

inline SuiteResult selftest_toric(long trials, unsigned seed) {
    SuiteResult res{"toric"};
    detail::SuiteRecorder rec(res);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> nd(1, 3), coef(-3, 3), expd(0, 4);

    auto random_torus_poly = [&](int n, int terms) {
        TorusPoly g;
        g.n = n;
        for (int j = 0; j < terms; ++j) {
            MultiIndex mt(static_cast<size_t>(n)), mu(static_cast<size_t>(n));
            for (auto& e : mt) e = expd(rng);
            int total = 0;
            for (auto& e : mu) {
                e = expd(rng);
                if (total + e > 4) e = 0;
                total += e;
            }
            int c = coef(rng);
            if (c != 0) g.add_term(mt, mu, Rational(c));
        }
        return g;
    };

    {  // expansion equals the substitution oracle, exactly
        long bad = 0;
        for (long i = 0; i < trials; ++i) {
            int n = nd(rng);
            TorusPoly g = random_torus_poly(n, 3);
            if (!(f_expansion(g) == series_expansion_oracle(g))) ++bad;
        }
        rec.bulk(trials, bad, "f_expansion == substitution oracle");
    }

    auto spec = BaseRingSpec::hybrid_field(3);
    auto sampler = gauss_axiom_sampler(spec, false);
    {  // q coherence: endpoint formula, monotonicity, time-0 value
        long bad1 = 0, bad2 = 0, bad3 = 0;
        for (long i = 0; i < trials; ++i) {
            ToricPoint x = sampler.draw(rng);
            MultiPoly f = to_multipoly(detail::random_poly<Rational>(rng, 4));
            double q1 = q_eval(spec, 1.0, x, f);
            double direct = 0.0;
            for (const auto& [mu, a] : f.terms) {
                double s = alpha(spec, rho_of(x), a) *
                           toric_eval(spec, x, MultiPoly::monomial(f.n, mu, Rational(1)));
                direct = std::max(direct, s);
            }
            if (q1 != direct) ++bad1;
            double prev = -1.0;
            for (int k = 0; k <= 20; ++k) {
                double v = q_eval(spec, k / 20.0, x, f);
                if (v + 1e-15 < prev) ++bad2;
                prev = v;
            }
            if (q_eval(spec, 0.0, x, f) != toric_eval(spec, x, f)) ++bad3;
        }
        rec.bulk(trials, bad1, "q_eval(1) equals the max-term formula");
        rec.bulk(trials, bad2, "q_eval monotone on the 21-point grid");
        rec.bulk(trials, bad3, "q_eval(0) equals |f(x)|");
    }

    int n = static_cast<int>(std::min<long>(trials, 150));
    rec.axiom(sdr_axiom_suite(q_homotopy(spec, 1), sampler, n, 1e-8, seed + 3),
              "SDR axioms: q");
    rec.axiom(sdr_axiom_suite(j_homotopy(spec, 1), gauss_axiom_sampler(spec, true), n, 1e-8,
                              seed + 4),
              "SDR axioms: J");

    rec.finish();
    return res;
}

inline SuiteResult selftest_dedekind(long trials, unsigned seed) {
    SuiteResult res{"dedekind"};
    detail::SuiteRecorder rec(res);
    std::mt19937_64 rng(seed);

    {  // base_eval multiplicativity, exact on the trivially-normed spectrum
        long bad = 0;
        std::uniform_int_distribution<int> ai(-40, 40);
        for (long i = 0; i < trials; ++i) {
            BasePoint z = sample_base_point(rng, false);
            Integer a(ai(rng)), b(ai(rng));
            NormValue lhs = base_eval(a * b, z);
            NormValue rhs = detail::nv_mul(base_eval(a, z), base_eval(b, z));
            if (!norm_close(lhs, rhs, 0.0)) ++bad;
        }
        rec.bulk(trials, bad, "base_eval multiplicativity (exact)");
    }

    {  // r_t fixed-point law on a rational grid
        long bad = 0, count = 0;
        for (int ic = 0; ic <= 40; ++ic) {
            for (int it = 1; it <= 40; ++it) {
                double c = ic / 40.0, t = it / 40.0;
                BasePoint z = base_prime(5, c);
                bool fixed = detail::same_base(r_t(z, t), z);
                bool want = ht(z).v >= t;
                ++count;
                if (fixed != want) ++bad;
            }
        }
        rec.bulk(count, bad, "r_t fixed iff ht >= t (41x41 grid)");
    }

    {  // canonicalization at c = 1
        long bad = 0;
        for (int a = 1; a <= 100; ++a) {
            NormValue v = base_eval(Integer(a), base_prime(3, 1.0));
            if (!(v.exact && v.q == Rational(1))) ++bad;
        }
        rec.bulk(100, bad, "|.|_{p,1} = trivial norm on 100 elements");
    }

    int n = static_cast<int>(std::min<long>(trials, 120));
    rec.axiom(sdr_axiom_suite(r_homotopy(), base_axiom_sampler(), n, 1e-8, seed + 5),
              "SDR axioms: Dedekind r_t");
    rec.axiom(sdr_axiom_suite(make_integer_line_sdr(4).full, int_line_axiom_sampler(),
                              std::max(8, n / 2), 1e-8, seed + 6),
              "SDR axioms: assembled integer line");

    {  // splice continuity of the assembled flow at the stage boundary
        auto line = make_integer_line_sdr(4);
        long ns = std::min<long>(trials, 40), bad = 0;
        for (long i = 0; i < ns; ++i) {
            IntLinePoint x = sample_int_line_point(rng);
            double d = int_line_distance(assembled_sdr(line, 0.5, x),
                                         assembled_sdr(line, 0.5 + 1e-12, x));
            if (d > 1e-9) ++bad;
        }
        rec.bulk(ns, bad, "stage splice continuity at s=1/2");
    }

    rec.finish();
    return res;
}

inline std::vector<SuiteResult> run_selftest(const std::string& which, long trials,
                                             unsigned seed) {
    std::vector<SuiteResult> out;
    auto want = [&](const char* name) { return which == "all" || which == name; };
    if (want("points")) out.push_back(selftest_points(trials, seed));
    if (want("discs")) out.push_back(selftest_discs(trials, seed));
    if (want("retractions")) out.push_back(selftest_retractions(trials, seed));
    if (want("toric")) out.push_back(selftest_toric(trials, seed));
    if (want("dedekind")) out.push_back(selftest_dedekind(trials, seed));
    if (out.empty()) throw DomainError("BadSuite", "unknown selftest suite: " + which);
    return out;
}

}  // namespace hyb
