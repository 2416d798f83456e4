#pragma once

#include "hyb/core_points.hpp"
#include "hyb/homotopy.hpp"
#include "hyb/norm_value.hpp"
#include "hyb/probes.hpp"
#include "hyb/retractions.hpp"
#include "hyb/toric.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace hyb {

// -------------------------------------------------------------------------
// Spectrum of a Dedekind ring: one branch segment per prime, glued at the
// trivial norm, plus the Archimedean branches of the integer-ring norm.
// |.|_{p,c} = c^{ord_p}; c = 1 is the trivial norm, c = 0 the residue norm.

struct PrimeBranch {
    long p = 2;
    double c = 0.0;  // in [0,1); c = 1 is canonicalized away
};
struct TrivialBase {};
struct ArchBranch {
    int sigma = 0;     // embedding class
    double rho = 1.0;  // in (0,1]
};

using BasePoint = std::variant<PrimeBranch, TrivialBase, ArchBranch>;

inline BasePoint base_prime(long p, double c) {
    BaseRingSpec::dvr(p);  // primality gate
    if (!(c >= 0.0 && c <= 1.0))
        throw DomainError("BadBranch", "branch gauge must lie in [0,1]");
    if (c == 1.0) return TrivialBase{};
    return PrimeBranch{p, c};
}

inline BasePoint base_trivial() { return TrivialBase{}; }

inline BasePoint base_arch(int sigma, double rho) {
    if (!(rho > 0.0 && rho <= 1.0))
        throw DomainError("BadFiber", "embedding exponent must lie in (0,1]");
    return ArchBranch{sigma, rho};
}

// Multiplicative evaluation on ring elements. Prime and trivial branches stay
// exact rationals; Archimedean values are exact only for integral rho.
inline NormValue base_eval(const Integer& a, const BasePoint& z) {
    if (const auto* pb = std::get_if<PrimeBranch>(&z)) {
        if (a == 0) return NormValue::from_rational(Rational(0));
        long k = detail::ord_int(iabs(a), pb->p);
        if (pb->c == 0.0) return NormValue::from_rational(Rational(k == 0 ? 1 : 0));
        return NormValue::from_rational(rat_pow(Rational(pb->c), k));
    }
    if (std::holds_alternative<TrivialBase>(z))
        return NormValue::from_rational(Rational(a == 0 ? 0 : 1));
    const auto& ab = std::get<ArchBranch>(z);
    return NormValue::from_rational(Rational(iabs(a))).pow_real(ab.rho);
}

// ht(z) = prod_p |pi_p(z)|: all factors but the branch's own equal 1.
inline NormValue ht(const BasePoint& z) {
    if (std::holds_alternative<ArchBranch>(z))
        throw DomainError("ArchNotAllowed", "ht lives on the trivially-normed spectrum");
    if (std::holds_alternative<TrivialBase>(z)) return NormValue::from_rational(Rational(1));
    return NormValue::from_rational(Rational(std::get<PrimeBranch>(z).c));
}

// Pointwise retraction |a(r_t(z))| = |a(z)|^{min(1, ht(z)/t)}; fixed exactly
// when ht(z) >= t. The exponent degenerates to 0 at the residue point, which
// therefore jumps to the trivial norm at every positive time.
inline BasePoint r_t(const BasePoint& z, double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw DomainError("BadTime", "retraction time must lie in [0,1]");
    if (std::holds_alternative<ArchBranch>(z))
        throw DomainError("ArchNotAllowed", "r_t lives on the trivially-normed spectrum");
    if (t == 0.0) return z;
    const auto* pb = std::get_if<PrimeBranch>(&z);
    if (!pb || pb->c >= t) return z;
    return base_prime(pb->p, std::pow(pb->c, pb->c / t));
}

// The closed form above is not an SDR onto the trivial norm (its time-1 slice
// is c -> c^c), so the homotopy object used by the axiom suites and by the
// assembled retraction is the height squeeze c -> max(c, t): the monotone
// realization with the same fixed locus ht >= t and the trivial norm at 1.
inline Homotopy<BasePoint> r_homotopy() {
    Homotopy<BasePoint> h;
    h.name = "r";
    h.domain = [](const BasePoint& z) { return !std::holds_alternative<ArchBranch>(z); };
    h.target = [](const BasePoint& z) { return std::holds_alternative<TrivialBase>(z); };
    h.fixed = h.target;
    h.eval = [](double t, const BasePoint& z) -> BasePoint {
        const auto* pb = std::get_if<PrimeBranch>(&z);
        if (!pb || pb->c >= t) return z;
        return base_prime(pb->p, t);
    };
    return h;
}

// Closed cover of the integer-ring spectrum: the trivially-normed part plus
// one hybrid branch per embedding, meeting only at the trivial norm.
struct CoverLocation {
    enum class Tag { Arch, NonArch, TrivialOverlap } tag = Tag::NonArch;
    int sigma = -1;
};

inline CoverLocation spectrum_cover_locate(const BasePoint& z) {
    if (const auto* ab = std::get_if<ArchBranch>(&z))
        return {CoverLocation::Tag::Arch, ab->sigma};
    if (std::holds_alternative<TrivialBase>(z))
        return {CoverLocation::Tag::TrivialOverlap, -1};
    return {CoverLocation::Tag::NonArch, -1};
}

// -------------------------------------------------------------------------
// Integer rings at desk scale: Z with its real embedding, Z[i] with the
// identity complex embedding (the conjugate pair collapses to one class).

enum class Ring { Z, Zi };

struct EmbeddingSpec {
    Ring ring = Ring::Z;

    static EmbeddingSpec integers() { return {Ring::Z}; }
    static EmbeddingSpec gauss_integers() { return {Ring::Zi}; }

    int count() const { return 1; }

    template <class K>
    std::complex<double> apply(const K& a, int sigma = 0) const {
        if (sigma != 0) throw DomainError("BadBranch", "embedding index out of range");
        return field_traits<K>::embed(a);
    }

    // ||a||_A = max over embeddings of |sigma(a)|_oo
    template <class K>
    double house(const K& a) const {
        return std::abs(apply(a));
    }
};

// Canonical generators of the prime ideals below `bound`. Over Z[i] each
// generator is the associate with re > 0, im >= 0, which is unique; split
// primes contribute both conjugate ideals.
struct PrimeIdeal {
    long p = 2;        // rational prime below
    long re = 2, im = 0;  // generator re + i*im; im = 0 over Z
};

inline std::vector<PrimeIdeal> prime_ideals(Ring ring, long bound) {
    std::vector<PrimeIdeal> out;
    for (long p = 2; p < bound; ++p) {
        bool prime = true;
        for (long d = 2; d * d <= p; ++d)
            if (p % d == 0) {
                prime = false;
                break;
            }
        if (!prime) continue;
        if (ring == Ring::Z || p % 4 == 3) {
            out.push_back({p, p, 0});
            continue;
        }
        if (p == 2) {
            out.push_back({p, 1, 1});
            continue;
        }
        long a = 0, b = 0;
        for (long x = 1; x * x < p && a == 0; ++x)
            for (long y = 1; y < x; ++y)
                if (x * x + y * y == p) {
                    a = x;
                    b = y;
                    break;
                }
        out.push_back({p, a, b});
        out.push_back({p, b, a});
    }
    return out;
}

// -------------------------------------------------------------------------
// The affine line over the integers: hybrid-line fibers over the Archimedean
// branch, Gauss-type fibers over the prime branches (the local ring at p with
// gauge c = 1 - rho), all meeting along the trivially-valued fiber.

struct GaussFiber {
    BaseRingSpec spec;  // Kind::Dvr at the branch prime
    ToricPoint pt;      // one variable
};

using IntLinePoint = std::variant<PointQ, GaussFiber>;

inline IntLinePoint int_line_hybrid(PointQ x) { return IntLinePoint(std::move(x)); }

inline IntLinePoint int_line_gauss(long p, ToricPoint pt) {
    if (dim_of(pt) != 1)
        throw UnsupportedError("UnsupportedPointKind", "integer-line fibers are one-dimensional");
    return IntLinePoint(GaussFiber{BaseRingSpec::dvr(p), std::move(pt)});
}

inline BasePoint base_of(const IntLinePoint& x) {
    if (const auto* h = std::get_if<PointQ>(&x)) {
        double l = lambda_of(materialize(*h));
        if (l > 0.0) return base_arch(0, l);
        return base_trivial();
    }
    const auto& g = std::get<GaussFiber>(x);
    double rho = rho_of(g.pt);
    if (rho > 0.0) return base_prime(g.spec.p, 1.0 - rho);
    return base_trivial();
}

// Coordinate-ring probes: elements of Z[T], with constants included so the
// base position takes part in distances.
inline const std::vector<Polynomial<Rational>>& int_line_probes() {
    static const std::vector<Polynomial<Rational>> fam = [] {
        using P = Polynomial<Rational>;
        std::vector<P> v;
        v.push_back(P::variable());
        v.push_back(P::linear_root(Rational(1)));
        v.push_back(P::linear_root(Rational(-1)));
        v.push_back(P::linear_root(Rational(2)));
        v.push_back(P(std::vector<Rational>{Rational(-2), Rational(0), Rational(1)}));  // T^2 - 2
        v.push_back(P(std::vector<Rational>{Rational(1), Rational(0), Rational(1)}));   // T^2 + 1
        v.push_back(P(std::vector<Rational>{Rational(2)}));
        v.push_back(P(std::vector<Rational>{Rational(3)}));
        v.push_back(P(std::vector<Rational>{Rational(3), Rational(2)}));  // 2T + 3
        return v;
    }();
    return fam;
}

inline MultiPoly to_multipoly(const Polynomial<Rational>& f) {
    MultiPoly m = MultiPoly::zero(1);
    for (size_t i = 0; i < f.c.size(); ++i) m.add_term(MultiIndex{static_cast<int>(i)}, f.c[i]);
    return m;
}

// The default toric probes cannot see nonzero centers over a trivially-normed
// base (alpha is trivial there), so skeleton tests on this line use the same
// family the distances use.
inline const std::vector<MultiPoly>& int_line_toric_probes() {
    static const std::vector<MultiPoly> fam = [] {
        std::vector<MultiPoly> v;
        for (const auto& f : int_line_probes()) v.push_back(to_multipoly(f));
        return v;
    }();
    return fam;
}

inline NormValue int_line_eval(const IntLinePoint& x, const Polynomial<Rational>& f) {
    if (const auto* h = std::get_if<PointQ>(&x)) return seminorm(*h, f);
    const auto& g = std::get<GaussFiber>(x);
    return NormValue::from_double(toric_eval(g.spec, g.pt, to_multipoly(f)));
}

inline double int_line_distance(const IntLinePoint& x, const IntLinePoint& y) {
    double d = 0.0;
    for (const auto& f : int_line_probes()) {
        double a = int_line_eval(x, f).v, b = int_line_eval(y, f).v;
        d = std::max(d, std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)}));
    }
    return d;
}

// Independent route for the torus flow on the trivially-valued fiber:
// |f(q(t,x))| = max_k |g_k(x)| t^k with g_k = sum_mu C(mu,k) a_mu T^mu. The
// point-level closed form eta_{p,r} -> eta_{p,max(r,t)} is checked against
// this in the tests.
inline double trivial_fiber_q_value(double t, const PointQ& x, const Polynomial<Rational>& f) {
    PointQ m = materialize(x);
    if (!m.is_triv())
        throw UnsupportedError("UnsupportedPointKind", "trivially-valued input required");
    if (f.is_zero()) return 0.0;
    t = std::clamp(t, 0.0, 1.0);
    double best = 0.0;
    for (size_t k = 0; k < f.c.size(); ++k) {
        std::vector<Rational> gc(f.c.size(), Rational(0));
        bool nonzero = false;
        for (size_t mu = k; mu < f.c.size(); ++mu) {
            gc[mu] = detail::binom_one(static_cast<long>(mu), static_cast<long>(k)) * f.c[mu];
            nonzero = nonzero || gc[mu] != 0;
        }
        if (!nonzero) continue;
        double v = seminorm(m, Polynomial<Rational>(gc)).v *
                   detail::dpow_int(t, static_cast<long>(k));
        best = std::max(best, v);
    }
    return best;
}

// Fixed locus of the assembled retraction: the skeleton of the trivially-
// valued fiber (the coordinate branch together with everything at radius >= 1)
// and the trivially-based Gauss skeleton.
inline bool int_line_skeleton(const IntLinePoint& x) {
    if (const auto* gf = std::get_if<GaussFiber>(&x))
        return rho_of(gf->pt) == 0.0 && skeleton_member(gf->spec, gf->pt, int_line_toric_probes());
    PointQ m = materialize(std::get<PointQ>(x));
    if (!m.is_triv()) return false;
    return m.triv().p == Polynomial<Rational>::variable() || m.triv().r >= 1;
}

// -------------------------------------------------------------------------
// Assembled SDR of the integral line. Stage 1 runs the global hybrid
// retraction fiberwise over the Archimedean branch and fixes everything else;
// stage 2 runs the toric q/J chain with the branch gauge driving beta. The
// splice order follows the cover proof: (J <| q) <| arch-stage.

inline Homotopy<IntLinePoint> arch_branch_stage(std::shared_ptr<const GlobalSdr<Rational>> g) {
    Homotopy<IntLinePoint> h;
    h.name = "Hhyb";
    auto off_branch = [](const IntLinePoint& x) {
        const auto* hq = std::get_if<PointQ>(&x);
        return !hq || !materialize(*hq).is_arch();
    };
    h.target = off_branch;
    h.fixed = off_branch;
    h.eval = [g](double t, const IntLinePoint& x) -> IntLinePoint {
        const auto* hq = std::get_if<PointQ>(&x);
        if (!hq || t <= 0.0) return x;
        if (!materialize(*hq).is_arch()) return x;
        return IntLinePoint(global_sdr(*g, t, *hq).pt);
    };
    return h;
}

inline Homotopy<IntLinePoint> fiber_q_stage() {
    Homotopy<IntLinePoint> h;
    h.name = "q";
    h.target = [](const IntLinePoint& x) {
        if (const auto* gf = std::get_if<GaussFiber>(&x))
            return skeleton_member(gf->spec, gf->pt, int_line_toric_probes());
        PointQ m = materialize(std::get<PointQ>(x));
        if (!m.is_triv()) return false;
        return m.triv().p == Polynomial<Rational>::variable() || m.triv().r >= 1;
    };
    h.fixed = h.target;
    h.eval = [](double t, const IntLinePoint& x) -> IntLinePoint {
        if (t <= 0.0) return x;
        if (const auto* gf = std::get_if<GaussFiber>(&x))
            return IntLinePoint(GaussFiber{gf->spec, q_point(gf->spec, t, gf->pt)});
        PointQ m = materialize(std::get<PointQ>(x));
        if (m.is_arch())
            throw UnsupportedError("UnsupportedPointKind",
                                   "the toric stage acts over the non-Archimedean base");
        const auto& tv = m.triv();
        if (tv.p == Polynomial<Rational>::variable() || tv.r >= 1) return x;
        Rational rt = std::max(tv.r, Rational(t));
        return IntLinePoint(make_triv(tv.p, std::move(rt), tv.irr));
    };
    return h;
}

inline Homotopy<IntLinePoint> fiber_j_stage() {
    Homotopy<IntLinePoint> h;
    h.name = "J";
    h.target = [](const IntLinePoint& x) {
        return std::holds_alternative<TrivialBase>(base_of(x));
    };
    h.fixed = [](const IntLinePoint& x) {
        if (const auto* gf = std::get_if<GaussFiber>(&x))
            return rho_of(gf->pt) == 0.0 && skeleton_member(gf->spec, gf->pt, int_line_toric_probes());
        return !materialize(std::get<PointQ>(x)).is_arch();
    };
    h.eval = [](double t, const IntLinePoint& x) -> IntLinePoint {
        if (t <= 0.0) return x;
        if (const auto* gf = std::get_if<GaussFiber>(&x))
            return IntLinePoint(GaussFiber{gf->spec, j_point(gf->spec, t, gf->pt)});
        if (materialize(std::get<PointQ>(x)).is_arch())
            throw UnsupportedError("UnsupportedPointKind",
                                   "the toric stage acts over the non-Archimedean base");
        return x;  // beta vanishes on the trivially-valued fiber
    };
    return h;
}

struct IntegerLine {
    std::shared_ptr<const GlobalSdr<Rational>> global;
    Homotopy<IntLinePoint> stage1;
    Homotopy<IntLinePoint> stage2;
    Homotopy<IntLinePoint> full;
};

inline IntegerLine make_integer_line_sdr(int depth = 8) {
    IntegerLine L;
    L.global = std::make_shared<const GlobalSdr<Rational>>(make_global_sdr<Rational>(depth));
    L.stage1 = arch_branch_stage(L.global);
    L.stage2 = homotopy_compose(fiber_j_stage(), fiber_q_stage());
    L.full = homotopy_compose(L.stage2, L.stage1);
    L.full.name = "Hint";
    L.full.domain = nullptr;
    L.full.target = int_line_skeleton;
    L.full.fixed = int_line_skeleton;
    return L;
}

inline IntLinePoint assembled_sdr(const IntegerLine& L, double s, const IntLinePoint& x) {
    return L.full(s, x);
}

// -------------------------------------------------------------------------
// Samplers shared by the test suites.

inline BasePoint sample_base_point(std::mt19937_64& rng, bool allow_arch = false) {
    static const long primes[] = {2, 3, 5, 7, 11};
    static const double gauges[] = {0.0, 0.25, 0.5, 0.625, 0.75, 1.0};
    std::uniform_int_distribution<int> kind(0, allow_arch ? 5 : 4);
    int k = kind(rng);
    if (k == 4) return base_trivial();
    if (k == 5) {
        std::uniform_int_distribution<int> ri(1, 4);
        return base_arch(0, ri(rng) / 4.0);
    }
    std::uniform_int_distribution<int> pi(0, 4), ci(0, 5);
    return base_prime(primes[pi(rng)], gauges[ci(rng)]);
}

inline double base_distance(const BasePoint& x, const BasePoint& y) {
    static const Integer elems[] = {Integer(2),  Integer(3),  Integer(5),  Integer(7),
                                    Integer(6),  Integer(30), Integer(-4), Integer(9)};
    double d = 0.0;
    for (const auto& a : elems) {
        double u = base_eval(a, x).v, v = base_eval(a, y).v;
        d = std::max(d, std::fabs(u - v) / std::max({1.0, std::fabs(u), std::fabs(v)}));
    }
    return d;
}

inline IntLinePoint sample_int_line_point(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 3);
    int k = kind(rng);
    if (k <= 1) return int_line_hybrid(sample_hybrid_point<Rational>(rng));
    static const long primes[] = {2, 3, 5, 7};
    static const double rhos[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    static const Rational centers[] = {Rational(0), Rational(1), Rational(2), Rational(-1),
                                       Rational(3)};
    static const double radii[] = {0.0, 0.25, 0.5, 1.0, 2.0};
    std::uniform_int_distribution<int> pi(0, 3), ri(0, 4), ci(0, 4), rad(0, 4);
    long p = primes[pi(rng)];
    GaussPoint g = make_gauss(rhos[ri(rng)], {centers[ci(rng)]}, {radii[rad(rng)]});
    if (k == 3) return int_line_gauss(p, q_point(BaseRingSpec::dvr(p), 0.5, ToricPoint(g)));
    return int_line_gauss(p, ToricPoint(g));
}

}  // namespace hyb
