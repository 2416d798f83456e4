#pragma once

#include "hyb/errors.hpp"
#include "hyb/norm_value.hpp"
#include "hyb/polynomial.hpp"

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <variant>

namespace hyb {

enum class IrrFlag { Certified, Assumed };

// Archimedean evaluation point: f |-> |f(z)|_oo^t, t in (0,1].
struct ArchPoint {
    std::complex<double> z{0.0, 0.0};
    double t = 1.0;
};

// Trivially-valued branch point eta_{p,r}: for f = sum a_i (T-z)^i around a root
// of the monic irreducible p, f |-> max_i |a_i|_0 r^i. Data is exact.
template <class K>
struct TrivPoint {
    Polynomial<K> p;   // monic, flagged irreducible
    Rational r{0};     // >= 0
    IrrFlag irr = IrrFlag::Certified;
};

template <class K> struct HybridPoint;

// Image of `base` under a named point map, materialized on demand.
// Supported ops: "rz" (params zre/zim), "squeeze" (delta/deltap/s).
template <class K>
struct DerivedPoint {
    std::string op;
    std::map<std::string, double> params;
    std::shared_ptr<const HybridPoint<K>> base;
};

template <class K>
struct HybridPoint {
    std::variant<ArchPoint, TrivPoint<K>, DerivedPoint<K>> rep;

    HybridPoint() : rep(TrivPoint<K>{Polynomial<K>::variable(), Rational(1)}) {}
    HybridPoint(ArchPoint a) : rep(std::move(a)) {}
    HybridPoint(TrivPoint<K> t) : rep(std::move(t)) {}
    HybridPoint(DerivedPoint<K> d) : rep(std::move(d)) {}

    bool is_arch() const { return std::holds_alternative<ArchPoint>(rep); }
    bool is_triv() const { return std::holds_alternative<TrivPoint<K>>(rep); }
    bool is_derived() const { return std::holds_alternative<DerivedPoint<K>>(rep); }
    const ArchPoint& arch() const { return std::get<ArchPoint>(rep); }
    const TrivPoint<K>& triv() const { return std::get<TrivPoint<K>>(rep); }
    const DerivedPoint<K>& derived() const { return std::get<DerivedPoint<K>>(rep); }
};

using PointQ = HybridPoint<Rational>;
using PointQi = HybridPoint<GaussRational>;

template <class K>
HybridPoint<K> make_arch(std::complex<double> z, double t) {
    if (!(t > 0.0 && t <= 1.0))
        throw DomainError("BadFiber", "arch point needs t in (0,1], got t=" + std::to_string(t));
    return HybridPoint<K>(ArchPoint{z, t});
}

// eta_{p,r}. For r >= 1 every branch gives the same point, canonically p = T.
template <class K>
HybridPoint<K> make_triv(Polynomial<K> p, Rational r, IrrFlag irr = IrrFlag::Certified) {
    if (!p.is_monic()) throw DomainError("NotMonic", "branch polynomial must be monic");
    if (p.degree() < 1) throw DomainError("NotMonic", "branch polynomial must be nonconstant");
    if (r < 0) throw DomainError("BadRadius", "branch parameter r must be >= 0");
    if (r >= 1) return HybridPoint<K>(TrivPoint<K>{Polynomial<K>::variable(), std::move(r), IrrFlag::Certified});
    return HybridPoint<K>(TrivPoint<K>{std::move(p), std::move(r), irr});
}

template <class K>
HybridPoint<K> trivial_norm_point() {
    return make_triv(Polynomial<K>::variable(), Rational(1));
}

inline NormValue eval_archimedean(const std::complex<double>& z, double t,
                                  const std::vector<std::complex<double>>& coeffs) {
    std::complex<double> acc(0.0, 0.0);
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
    return NormValue::from_double(std::pow(std::abs(acc), t));
}

template <class K>
NormValue eval_archimedean(const ArchPoint& x, const Polynomial<K>& f) {
    return eval_archimedean(x.z, x.t, f.complex_coeffs());
}

// Closed form: 0 for f = 0; else with v the exact multiplicity of p in f,
// r^v when r <= 1 (0^0 = 1) and r^{deg f} when r > 1.
template <class K>
NormValue eval_trivial(const TrivPoint<K>& x, const Polynomial<K>& f) {
    if (!x.p.is_monic()) throw DomainError("NotMonic", "branch polynomial must be monic");
    if (f.is_zero()) return NormValue::from_rational(Rational(0));
    if (x.r > 1) return NormValue::from_rational(rat_pow(x.r, f.degree()));
    int v = multiplicity(x.p, f);
    if (x.r == 0) return NormValue::from_rational(Rational(v == 0 ? 1 : 0));
    return NormValue::from_rational(rat_pow(x.r, v));
}

// 'r_z' from the one-point compactification section: Arch centers get pulled
// radially into the closed disc around z; branch points of T-z are kept, every
// other trivially-valued point lands at the trivial norm.
template <class K>
HybridPoint<K> rz_apply(const std::complex<double>& z, const HybridPoint<K>& x);

// fiber squeeze: lambda |-> min(lambda, delta(1-s) + delta' s) on Arch points.
template <class K>
HybridPoint<K> squeeze_apply(double delta, double deltap, double s, const HybridPoint<K>& x);

template <class K>
HybridPoint<K> materialize(const HybridPoint<K>& x) {
    if (!x.is_derived()) return x;
    const auto& d = x.derived();
    HybridPoint<K> base = materialize(*d.base);
    if (d.op == "rz")
        return rz_apply(std::complex<double>(d.params.at("zre"), d.params.at("zim")), base);
    if (d.op == "squeeze")
        return squeeze_apply(d.params.at("delta"), d.params.at("deltap"), d.params.at("s"), base);
    throw UnsupportedError("UnsupportedTag", "derived op '" + d.op + "'");
}

template <class K>
NormValue seminorm(const HybridPoint<K>& x, const Polynomial<K>& f) {
    if (x.is_arch()) return eval_archimedean(x.arch(), f);
    if (x.is_triv()) return eval_trivial(x.triv(), f);
    return seminorm(materialize(x), f);
}

template <class K>
double lambda_of(const HybridPoint<K>& x) {
    if (x.is_arch()) return x.arch().t;
    if (x.is_triv()) return 0.0;
    return lambda_of(materialize(x));
}

template <class K>
HybridPoint<K> rz_apply(const std::complex<double>& z, const HybridPoint<K>& x) {
    if (x.is_derived()) return rz_apply(z, materialize(x));
    if (x.is_arch()) {
        const auto& a = x.arch();
        double d = std::abs(a.z - z);
        double f = d <= a.t ? 1.0 : a.t / d;
        return HybridPoint<K>(ArchPoint{z + f * (a.z - z), a.t});
    }
    const auto& tp = x.triv();
    // branch points of T - z are exactly the fixed trivially-valued ones
    if (tp.p.degree() == 1 && tp.r <= 1) {
        K root = K(0) - tp.p.c[0];
        if (std::abs(field_traits<K>::embed(root) - z) <= 1e-12) return x;
    }
    return trivial_norm_point<K>();
}

template <class K>
HybridPoint<K> squeeze_apply(double delta, double deltap, double s, const HybridPoint<K>& x) {
    if (!(deltap > 0.0 && deltap <= delta && delta <= 1.0))
        throw DomainError("BadDeltas", "need 0 < delta' <= delta <= 1");
    if (x.is_derived()) return squeeze_apply(delta, deltap, s, materialize(x));
    if (!x.is_arch()) return x;
    const auto& a = x.arch();
    if (a.t > delta + 1e-12)
        throw DomainError("BadDeltas", "point lies above the squeezed band");
    double cap = delta * (1.0 - s) + deltap * s;
    return HybridPoint<K>(ArchPoint{a.z, std::min(a.t, cap)});
}

template <class K>
HybridPoint<K> conjugate(const HybridPoint<K>& x) {
    static_assert(field_traits<K>::has_conjugation, "conjugation needs the Gaussian field");
    if (x.is_arch()) return HybridPoint<K>(ArchPoint{std::conj(x.arch().z), x.arch().t});
    if (x.is_triv()) {
        const auto& t = x.triv();
        return HybridPoint<K>(TrivPoint<K>{conj_poly(t.p), t.r, t.irr});
    }
    const auto& d = x.derived();
    DerivedPoint<K> r;
    r.op = d.op;
    r.params = d.params;
    if (auto it = r.params.find("zim"); it != r.params.end()) it->second = -it->second;
    r.base = std::make_shared<const HybridPoint<K>>(conjugate(*d.base));
    return HybridPoint<K>(std::move(r));
}

// Scalar restriction along Q -> Q(i). Arch centers are identified with their
// conjugates; branch data descends to p * conj(p) when p is not rational.
inline PointQ restrict_scalars(const PointQi& x) {
    if (x.is_derived()) return restrict_scalars(materialize(x));
    if (x.is_arch()) {
        auto a = x.arch();
        if (a.z.imag() < 0.0) a.z = std::conj(a.z);
        return PointQ(ArchPoint{a.z, a.t});
    }
    const auto& t = x.triv();
    if (auto pr = to_rational(t.p)) return make_triv<Rational>(*pr, t.r, t.irr);
    PolyQi prod = t.p * conj_poly(t.p);
    auto pq = to_rational(prod);
    if (!pq) throw NumericError("Internal", "p * conj(p) must be real");
    return make_triv<Rational>(*pq, t.r, t.irr);
}

inline PointQi extend_scalars(const PointQ& x) {
    if (x.is_derived()) return extend_scalars(materialize(x));
    if (x.is_arch()) return PointQi(ArchPoint{x.arch().z, x.arch().t});
    const auto& t = x.triv();
    return PointQi(TrivPoint<GaussRational>{to_gaussian(t.p), t.r, t.irr});
}

}  // namespace hyb
