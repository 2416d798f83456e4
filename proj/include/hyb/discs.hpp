#pragma once

#include "hyb/core_points.hpp"
#include "hyb/roots.hpp"

#include <cmath>
#include <complex>
#include <optional>

namespace hyb {

inline double chi(double t) {
    if (t < 0.0) throw DomainError("BadFiber", "chi needs t >= 0");
    if (t == 0.0) return 1.0;
    return std::pow(t, t);
}

enum class RegionTag { D, C, E, N, Nplus, TrivSegment };

// Hybrid closed disc D_k(p, delta), or the disc at infinity.
template <class K>
struct DiscSpec {
    std::optional<Polynomial<K>> p;  // nullopt marks the disc at infinity
    double delta = 1.0;

    static DiscSpec finite(Polynomial<K> poly, double d) {
        if (!poly.is_monic()) throw DomainError("NotMonic", "disc polynomial must be monic");
        if (!(d > 0.0 && d <= 1.0)) throw DomainError("BadDeltas", "delta must be in (0,1]");
        return DiscSpec{std::move(poly), d};
    }
    static DiscSpec infinity(double d) {
        if (!(d > 0.0 && d <= 1.0)) throw DomainError("BadDeltas", "delta must be in (0,1]");
        return DiscSpec{std::nullopt, d};
    }
    bool is_infinity() const { return !p.has_value(); }
};

namespace detail {

inline double arch_scale(const std::vector<std::complex<double>>& coeffs, double az) {
    double s = 0.0, zp = 1.0;
    for (const auto& c : coeffs) {
        s += std::abs(c) * zp;
        zp *= std::max(az, 1.0);
    }
    return s;
}

// |p(w)| = 0 test with the relative zero-detection threshold.
template <class K>
bool arch_on_axis(const Polynomial<K>& p, const std::complex<double>& w) {
    auto cs = p.complex_coeffs();
    std::complex<double> acc(0.0, 0.0);
    for (size_t i = cs.size(); i-- > 0;) acc = acc * w + cs[i];
    return std::abs(acc) <= 1e-12 * (1.0 + arch_scale(cs, std::abs(w)));
}

}  // namespace detail

template <class K>
bool region_member(const HybridPoint<K>& x, const DiscSpec<K>& spec, RegionTag tag,
                   double tol = 1e-9) {
    if (spec.is_infinity() && tag == RegionTag::Nplus)
        throw UnsupportedError("UnsupportedTag", "N+ is undefined for the disc at infinity");
    if (x.is_derived()) return region_member(materialize(x), spec, tag, tol);

    const double delta = spec.delta;
    if (x.is_arch()) {
        const auto& a = x.arch();
        double t = a.t;
        if (t > delta + tol) return false;
        if (spec.is_infinity()) {
            // |T(x)| >= chi(t)^{-1}  <=>  |z| t >= 1
            double m = std::abs(a.z) * t;
            bool in_d = m >= 1.0 - tol;
            switch (tag) {
                case RegionTag::D: return in_d;
                case RegionTag::C: return in_d && std::fabs(m - 1.0) <= tol;
                case RegionTag::E:
                    return (in_d && std::fabs(m - 1.0) <= tol) ||
                           (in_d && std::fabs(t - delta) <= tol);
                case RegionTag::N: return in_d && std::fabs(m - 1.0) <= tol;
                case RegionTag::TrivSegment: return false;
                default: return false;
            }
        }
        double pv = std::pow(std::abs(spec.p->eval(a.z)), t);
        double cap = chi(t);
        bool in_d = pv <= cap + tol;
        bool on_wall = in_d && std::fabs(pv - cap) <= tol;
        switch (tag) {
            case RegionTag::D: return in_d;
            case RegionTag::C: return on_wall;
            case RegionTag::E: return on_wall || (in_d && std::fabs(t - delta) <= tol);
            case RegionTag::N: return on_wall;
            case RegionTag::Nplus:
                return on_wall || detail::arch_on_axis(*spec.p, a.z);
            case RegionTag::TrivSegment: return false;
        }
        return false;
    }

    // Trivially-valued fibre: the naive |p(x)| <= chi(0) = 1 test degenerates, so
    // membership is the interval characterization on branches of the factors.
    const auto& tp = x.triv();
    if (spec.is_infinity()) {
        bool on_seg = tp.r >= 1;  // [eta_{0,1}, eta_{0,oo}), canonical p = T
        switch (tag) {
            case RegionTag::D: return on_seg;
            case RegionTag::C: return tp.r == 1;
            case RegionTag::E: return tp.r == 1;
            case RegionTag::N: return on_seg;
            case RegionTag::TrivSegment: return on_seg;
            default: return false;
        }
    }
    bool trivial_pt = tp.r == 1;
    bool on_branch = trivial_pt || (tp.r < 1 && divides(tp.p, *spec.p));
    switch (tag) {
        case RegionTag::D: return on_branch;
        case RegionTag::C: return trivial_pt;
        case RegionTag::E: return trivial_pt;
        case RegionTag::N: return on_branch;
        case RegionTag::Nplus: return on_branch;
        case RegionTag::TrivSegment: return on_branch;
    }
    return false;
}

template <class K>
bool basic_neighbourhood_member(const HybridPoint<K>& x, const Polynomial<K>& p, double r,
                                double eps, const DiscSpec<K>& spec, double tol = 1e-9) {
    if (!(eps > 0.0 && eps < std::min(r, spec.delta)))
        throw DomainError("BadEpsilon", "need eps in (0, min(r, delta))");
    if (!region_member(x, spec, RegionTag::D, tol)) return false;
    if (lambda_of(x) >= eps) return false;
    double pv = seminorm(x, p).v;
    return pv > r - eps && pv < r + eps;
}

struct CylinderCoord {
    std::complex<double> w{0.0, 0.0};  // |w| <= 1
    double s = 0.0;                    // in [0,1]
};

inline void check_cylinder(const CylinderCoord& c) {
    if (std::abs(c.w) > 1.0 + 1e-12 || c.s < -1e-15 || c.s > 1.0 + 1e-15)
        throw DomainError("OutOfCylinder", "cylinder coordinate out of range");
}

// Homeomorphism of the solid cylinder with D_k(delta): (w,0) |-> eta_{T,|w|},
// (w, s>0) |-> ev(w * delta*s * |w|^{1/(delta s) - 1}, delta*s).
template <class K>
HybridPoint<K> g_delta(const CylinderCoord& c, double delta) {
    check_cylinder(c);
    if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("BadDeltas", "delta in (0,1]");
    if (c.s <= 0.0) return make_triv<K>(Polynomial<K>::variable(), Rational(std::abs(c.w)));
    double t = delta * c.s;
    double aw = std::abs(c.w);
    if (aw == 0.0) return make_arch<K>({0.0, 0.0}, t);
    std::complex<double> z = c.w * (t * std::pow(aw, 1.0 / t - 1.0));
    return make_arch<K>(z, t);
}

template <class K>
CylinderCoord g_delta_inverse(const HybridPoint<K>& x, double delta, double tol = 1e-9) {
    if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("BadDeltas", "delta in (0,1]");
    if (x.is_derived()) return g_delta_inverse(materialize(x), delta, tol);
    if (x.is_triv()) {
        const auto& tp = x.triv();
        if (tp.r > 1 || (tp.r < 1 && tp.p.degree() != 1) ||
            (tp.r < 1 && !field_traits<K>::is_zero(tp.p.c[0])))
            throw DomainError("OutOfDisc", "trivially-valued point off the T-branch");
        return CylinderCoord{{to_double(Rational(tp.r)), 0.0}, 0.0};
    }
    const auto& a = x.arch();
    double t = a.t;
    if (t > delta + tol) throw DomainError("OutOfDisc", "lambda above delta");
    double az = std::abs(a.z);
    if (az == 0.0) return CylinderCoord{{0.0, 0.0}, t / delta};
    if (std::pow(az, t) > chi(t) + tol) throw DomainError("OutOfDisc", "outside D_k(delta)");
    std::complex<double> w = a.z * (std::pow(t, -t) * std::pow(az, t - 1.0));
    if (std::abs(w) > 1.0) w *= 1.0 / std::abs(w);  // clamp boundary roundoff
    return CylinderCoord{w, t / delta};
}

template <class K>
double delta_threshold(const Polynomial<K>& p) {
    if (!p.is_monic()) throw DomainError("NotMonic", "threshold needs a monic polynomial");
    auto dp = p.derivative();
    if (poly_gcd(p, dp).degree() != 0)
        throw DomainError("NotSquarefree", "p shares a root with p'");
    if (dp.degree() < 1) return 1.0;
    auto rp = roots_numeric(p);
    auto rc = roots_numeric(dp);
    double dmin = std::numeric_limits<double>::infinity();
    for (const auto& a : rp)
        for (const auto& b : rc) dmin = std::min(dmin, std::abs(a - b));
    return std::min(1.0, dmin / 2.0);
}

// Pullback along the torus automorphism T -> T^{-1}; |T| values invert.
template <class K>
HybridPoint<K> infinity_chart(const HybridPoint<K>& x) {
    if (x.is_derived()) return infinity_chart(materialize(x));
    if (x.is_arch()) {
        const auto& a = x.arch();
        if (std::abs(a.z) == 0.0) throw DomainError("KernelPoint", "T vanishes at this point");
        return make_arch<K>(1.0 / a.z, a.t);
    }
    const auto& tp = x.triv();
    bool is_t_branch = tp.p.degree() == 1 && field_traits<K>::is_zero(tp.p.c[0]);
    if (is_t_branch || tp.r >= 1) {
        if (tp.r == 0) throw DomainError("KernelPoint", "T vanishes at eta_{T,0}");
        return make_triv<K>(Polynomial<K>::variable(), Rational(1) / tp.r, tp.irr);
    }
    // other branches: the reciprocal polynomial's branch at the same parameter
    return make_triv<K>(reciprocal_monic(tp.p), tp.r, tp.irr);
}

}  // namespace hyb
