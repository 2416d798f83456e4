#pragma once

#include "hyb/errors.hpp"
#include "hyb/homotopy.hpp"
#include "hyb/norm_value.hpp"
#include "hyb/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hyb {

// -------------------------------------------------------------------------
// Base ring for the affine-space module: either the rationals with a p-adic
// absolute value raised to a fiber power, or the integers localized at p with
// the trivially-derived seminorm family. Both families are non-Archimedean.

struct BaseRingSpec {
    enum class Kind { HybridField, Dvr } kind = Kind::HybridField;
    long p = 2;

    static BaseRingSpec hybrid_field(long prime) { return make(Kind::HybridField, prime); }
    static BaseRingSpec dvr(long prime) { return make(Kind::Dvr, prime); }

  private:
    static BaseRingSpec make(Kind k, long prime) {
        if (prime < 2) throw DomainError("BadPrime", "base prime must be >= 2");
        for (long d = 2; d * d <= prime; ++d)
            if (prime % d == 0) throw DomainError("BadPrime", "base parameter is composite");
        return BaseRingSpec{k, prime};
    }
};

using MultiIndex = std::vector<int>;

inline int mi_total(const MultiIndex& m) {
    int s = 0;
    for (int e : m) s += e;
    return s;
}

// Polynomial in T_1..T_n over the exact scalars; zero coefficients never stored.
struct MultiPoly {
    int n = 1;
    std::map<MultiIndex, Rational> terms;

    static MultiPoly zero(int vars) { return MultiPoly{vars, {}}; }
    static MultiPoly constant(int vars, Rational a) {
        MultiPoly f{vars, {}};
        if (a != 0) f.terms[MultiIndex(static_cast<size_t>(vars), 0)] = std::move(a);
        return f;
    }
    static MultiPoly monomial(int vars, const MultiIndex& mu, Rational a) {
        MultiPoly f{vars, {}};
        if (a != 0) f.terms[mu] = std::move(a);
        return f;
    }
    static MultiPoly variable(int vars, int i) {
        MultiIndex mu(static_cast<size_t>(vars), 0);
        mu[static_cast<size_t>(i)] = 1;
        return monomial(vars, mu, Rational(1));
    }

    void add_term(const MultiIndex& mu, const Rational& a) {
        if (a == 0) return;
        auto it = terms.find(mu);
        if (it == terms.end()) {
            terms.emplace(mu, a);
            return;
        }
        it->second += a;
        if (it->second == 0) terms.erase(it);
    }
    bool is_zero() const { return terms.empty(); }
    MultiIndex degree_vector() const {
        MultiIndex d(static_cast<size_t>(n), 0);
        for (const auto& [mu, a] : terms)
            for (size_t i = 0; i < d.size(); ++i) d[i] = std::max(d[i], mu[i]);
        return d;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r = a;
        for (const auto& [mu, c] : b.terms) r.add_term(mu, c);
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r = MultiPoly::zero(a.n);
        for (const auto& [mu, c] : a.terms)
            for (const auto& [nu, d] : b.terms) {
                MultiIndex s = mu;
                for (size_t i = 0; i < s.size(); ++i) s[i] += nu[i];
                r.add_term(s, c * d);
            }
        return r;
    }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.n == b.n && a.terms == b.terms;
    }
};

// Polynomial in T_1..T_n and torus variables u_1..u_n (nonnegative exponents).
struct TorusPoly {
    int n = 1;
    std::map<std::pair<MultiIndex, MultiIndex>, Rational> terms;  // (T-exp, u-exp)

    void add_term(const MultiIndex& t, const MultiIndex& u, const Rational& a) {
        if (a == 0) return;
        auto key = std::make_pair(t, u);
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms.emplace(std::move(key), a);
            return;
        }
        it->second += a;
        if (it->second == 0) terms.erase(it);
    }
};

// Coefficients of the Taylor expansion about u = 1: v-exponent -> element of B.
struct ToricExpansion {
    int n = 1;
    std::map<MultiIndex, MultiPoly> coeff;

    void add(const MultiIndex& mu, const MultiPoly& g) {
        if (g.is_zero()) return;
        auto it = coeff.find(mu);
        if (it == coeff.end()) {
            coeff.emplace(mu, g);
            return;
        }
        it->second = it->second + g;
        if (it->second.is_zero()) coeff.erase(it);
    }
    friend bool operator==(const ToricExpansion& a, const ToricExpansion& b) {
        return a.n == b.n && a.coeff == b.coeff;
    }
};

namespace detail {

inline double dpow_int(double b, long e) {
    if (e < 0) return 1.0 / dpow_int(b, -e);
    double v = 1.0;
    for (long i = 0; i < e; ++i) v *= b;
    return v;
}

inline Rational binom_one(long m, long k) {
    if (k < 0 || k > m) return Rational(0);
    Rational r(1);
    for (long i = 0; i < k; ++i) {
        r *= Rational(m - i);
        r /= Rational(i + 1);
    }
    return r;
}

inline Rational binom_multi(const MultiIndex& m, const MultiIndex& k) {
    Rational r(1);
    for (size_t i = 0; i < m.size(); ++i) {
        r *= binom_one(m[i], k[i]);
        if (r == 0) return r;
    }
    return r;
}

inline long ord_int(Integer a, long p) {
    long o = 0;
    while (a % p == 0) {
        a /= p;
        ++o;
    }
    return o;
}

// p-adic order of a nonzero rational, exact.
inline long ord_rational(const Rational& a, long p) {
    return ord_int(iabs(num(a)), p) - ord_int(den(a), p);
}

}  // namespace detail

// -------------------------------------------------------------------------
// The base seminorm family alpha. Field case: |a|_p^rho. Dvr case: the gauge
// c^{ord_p(a)} with c = 1 - rho, read off from |.|_dvr^{-log(1-rho)} with the
// logarithm taken in base p. rho = 0 is the trivial norm in both cases; dvr
// rho = 1 is reduction mod the maximal ideal.

// Shared evaluation of one Gauss-norm candidate: the base scale of a scalar of
// p-order `ord`, times the radius monomial r^kappa. Every route that needs a
// norm value goes through this function so equal candidates give equal doubles.
inline double candidate_value(const BaseRingSpec& spec, double rho, long ord,
                              const MultiIndex& kappa, const std::vector<double>& radii) {
    double v;
    if (spec.kind == BaseRingSpec::Kind::HybridField) {
        v = std::pow(static_cast<double>(spec.p), -rho * static_cast<double>(ord));
    } else {
        double c = 1.0 - rho;
        if (ord == 0)
            v = 1.0;
        else if (c == 0.0)
            v = ord > 0 ? 0.0 : std::numeric_limits<double>::infinity();
        else
            v = detail::dpow_int(c, ord);
    }
    for (size_t i = 0; i < kappa.size(); ++i) v *= detail::dpow_int(radii[i], kappa[i]);
    return v;
}

inline double alpha(const BaseRingSpec& spec, double rho, const Rational& a) {
    if (a == 0) return 0.0;
    return candidate_value(spec, rho, detail::ord_rational(a, spec.p), {}, {});
}

// Fiber parameter of a base seminorm given its value on p (field) or its gauge
// (dvr); inverse of alpha on the parametrizing interval.
inline double alpha_inv(const BaseRingSpec& spec, double value_at_p) {
    if (!(value_at_p >= 0.0 && value_at_p <= 1.0))
        throw DomainError("BadFiber", "seminorm value of the uniformizer must be in [0,1]");
    if (spec.kind == BaseRingSpec::Kind::HybridField) {
        if (value_at_p == 0.0)
            throw DomainError("BadFiber", "p-adic family never vanishes on p");
        return -std::log(value_at_p) / std::log(static_cast<double>(spec.p));
    }
    return 1.0 - value_at_p;
}

// -------------------------------------------------------------------------
// Point model: Gauss points (fiber parameter, exact center, polyradius) and
// derived closures of the torus flow q and the fiber flow J.

struct GaussPoint {
    double rho = 0.0;
    std::vector<Rational> center;
    std::vector<double> radii;

    int n() const { return static_cast<int>(center.size()); }
};

struct DerivedToric;

using ToricPoint = std::variant<GaussPoint, DerivedToric>;

struct DerivedToric {
    std::string op;  // "q" or "J"
    double t = 0.0;
    double rho = 0.0;  // fiber parameter of the result
    std::shared_ptr<const ToricPoint> base;
};

inline GaussPoint make_gauss(double rho, std::vector<Rational> center,
                             std::vector<double> radii) {
    if (!(rho >= 0.0 && rho <= 1.0))
        throw DomainError("BadFiber", "fiber parameter must lie in [0,1]");
    if (center.size() != radii.size())
        throw DomainError("BadRadius", "center and radius vectors differ in length");
    for (double r : radii)
        if (!(r >= 0.0)) throw DomainError("BadRadius", "radii must be nonnegative");
    return GaussPoint{rho, std::move(center), std::move(radii)};
}

inline double rho_of(const ToricPoint& x) {
    if (const auto* g = std::get_if<GaussPoint>(&x)) return g->rho;
    return std::get<DerivedToric>(x).rho;
}

inline int dim_of(const ToricPoint& x) {
    if (const auto* g = std::get_if<GaussPoint>(&x)) return g->n();
    return dim_of(*std::get<DerivedToric>(x).base);
}

namespace detail {

// Exact recentering: f(T) rewritten in powers of (T_i - c_i), one variable at
// a time.
inline MultiPoly taylor_shift(const MultiPoly& f, const std::vector<Rational>& c) {
    MultiPoly cur = f;
    for (size_t v = 0; v < c.size(); ++v) {
        if (c[v] == 0) continue;
        MultiPoly next = MultiPoly::zero(f.n);
        for (const auto& [mu, a] : cur.terms) {
            long d = mu[v];
            Rational cpow(1);
            for (long k = d; k >= 0; --k) {
                // coefficient of S^k in (S + c)^d, S the shifted variable
                MultiIndex nu = mu;
                nu[v] = static_cast<int>(k);
                next.add_term(nu, a * binom_one(d, k) * cpow);
                cpow *= c[v];
            }
        }
        cur = next;
    }
    return cur;
}

}  // namespace detail

// Gauss-norm of f at a Gauss point: recenter exactly, then take the maximal
// candidate |b_kappa| r^kappa.
inline double gauss_eval(const BaseRingSpec& spec, const GaussPoint& x, const MultiPoly& f) {
    MultiPoly s = detail::taylor_shift(f, x.center);
    double best = 0.0;
    for (const auto& [kappa, b] : s.terms) {
        double v = candidate_value(spec, x.rho, detail::ord_rational(b, spec.p), kappa,
                                   x.radii);
        best = std::max(best, v);
    }
    return best;
}

inline double toric_eval(const BaseRingSpec& spec, const ToricPoint& x, const MultiPoly& f);

// |f(q(t,x))| = max_nu |g_nu(x)| t^{|nu|} with g_nu = sum binom(mu,nu) a_mu T^mu;
// nu runs over the box cut out by the degree vector, which is exact.
inline double q_eval(const BaseRingSpec& spec, double t, const ToricPoint& x,
                     const MultiPoly& f) {
    if (f.is_zero()) return 0.0;
    MultiIndex dv = f.degree_vector();
    size_t n = dv.size();
    MultiIndex nu(n, 0);
    double best = 0.0;
    for (;;) {
        MultiPoly g = MultiPoly::zero(f.n);
        for (const auto& [mu, a] : f.terms) {
            Rational b = detail::binom_multi(mu, nu);
            if (b != 0) g.add_term(mu, b * a);
        }
        if (!g.is_zero())
            best = std::max(best, toric_eval(spec, x, g) *
                                      detail::dpow_int(t, mi_total(nu)));
        size_t i = 0;
        while (i < n && nu[i] == dv[i]) nu[i++] = 0;
        if (i == n) break;
        ++nu[i];
    }
    return best;
}

// |f(J(t,x))| = max_mu |a_mu|_{alpha(rho')} |T^mu(x)|: new base norm on the
// coefficients, old point on the monomials.
inline double j_eval(const BaseRingSpec& spec, double rho_new, const ToricPoint& base,
                     const MultiPoly& f) {
    double best = 0.0;
    for (const auto& [mu, a] : f.terms) {
        double s = candidate_value(spec, rho_new, detail::ord_rational(a, spec.p), {}, {});
        best = std::max(best,
                        s * toric_eval(spec, base, MultiPoly::monomial(f.n, mu, Rational(1))));
    }
    return best;
}

inline double toric_eval(const BaseRingSpec& spec, const ToricPoint& x, const MultiPoly& f) {
    if (const auto* g = std::get_if<GaussPoint>(&x)) return gauss_eval(spec, *g, f);
    const auto& d = std::get<DerivedToric>(x);
    if (d.op == "q") return q_eval(spec, d.t, *d.base, f);
    if (d.op == "J") return j_eval(spec, d.rho, *d.base, f);
    throw UnsupportedError("UnsupportedTag", "unknown derived toric op '" + d.op + "'");
}

// -------------------------------------------------------------------------
// Torus action and Taylor expansion about u = 1.

inline TorusPoly mstar(const MultiPoly& f) {
    TorusPoly g{f.n, {}};
    for (const auto& [mu, a] : f.terms) g.add_term(mu, mu, a);
    return g;
}

// F(f)_mu = sum_nu binom(nu, mu) b_nu over the u-support, coefficients in B.
inline ToricExpansion f_expansion(const TorusPoly& g) {
    ToricExpansion e{g.n, {}};
    for (const auto& [key, a] : g.terms) {
        const auto& [texp, uexp] = key;
        size_t n = uexp.size();
        MultiIndex mu(n, 0);
        for (;;) {
            Rational b = detail::binom_multi(uexp, mu);
            if (b != 0) e.add(mu, MultiPoly::monomial(g.n, texp, b * a));
            size_t i = 0;
            while (i < n && mu[i] == uexp[i]) mu[i++] = 0;
            if (i == n) break;
            ++mu[i];
        }
    }
    return e;
}

// Independent route: substitute u_i := 1 + v_i and multiply out term by term.
inline ToricExpansion series_expansion_oracle(const TorusPoly& g) {
    ToricExpansion e{g.n, {}};
    for (const auto& [key, a] : g.terms) {
        const auto& [texp, uexp] = key;
        size_t n = uexp.size();
        std::map<MultiIndex, Rational> acc;
        acc[MultiIndex(n, 0)] = a;
        for (size_t i = 0; i < n; ++i) {
            for (int rep = 0; rep < uexp[i]; ++rep) {
                std::map<MultiIndex, Rational> next = acc;  // the "1 +" part
                for (const auto& [mu, c] : acc) {
                    MultiIndex shifted = mu;
                    ++shifted[i];
                    auto [it, fresh] = next.emplace(shifted, c);
                    if (!fresh) {
                        it->second += c;
                        if (it->second == 0) next.erase(it);
                    }
                }
                acc = std::move(next);
            }
        }
        for (const auto& [mu, c] : acc) e.add(mu, MultiPoly::monomial(g.n, texp, c));
    }
    return e;
}

// |g(p(t,x))| = max_mu |F(g)_mu(x)| t^mu with a componentwise radius vector.
inline double p_point_eval(const BaseRingSpec& spec, const std::vector<double>& t,
                           const ToricPoint& x, const TorusPoly& g) {
    ToricExpansion e = f_expansion(g);
    double best = 0.0;
    for (const auto& [mu, fm] : e.coeff) {
        double v = toric_eval(spec, x, fm);
        for (size_t i = 0; i < mu.size(); ++i) v *= detail::dpow_int(t[i], mu[i]);
        best = std::max(best, v);
    }
    return best;
}

// -------------------------------------------------------------------------
// The retraction q and the fiber flow J as point-valued maps.

inline ToricPoint q_point(const BaseRingSpec& spec, double t, const ToricPoint& x) {
    if (t <= 0.0) return x;
    if (t >= 1.0) {
        if (const auto* g = std::get_if<GaussPoint>(&x)) {
            std::vector<Rational> zero(g->center.size(), Rational(0));
            std::vector<double> radii(g->radii.size());
            for (size_t i = 0; i < radii.size(); ++i) {
                double ci = alpha(spec, g->rho, g->center[i]);
                radii[i] = std::max(ci, g->radii[i]);
            }
            return make_gauss(g->rho, std::move(zero), std::move(radii));
        }
    }
    return DerivedToric{"q", std::min(1.0, t), rho_of(x),
                        std::make_shared<const ToricPoint>(x)};
}

inline double beta(const BaseRingSpec&, double t, const ToricPoint& x) {
    return std::min(1.0 - std::clamp(t, 0.0, 1.0), rho_of(x));
}

inline ToricPoint j_point(const BaseRingSpec& spec, double t, const ToricPoint& x) {
    double rp = beta(spec, t, x);
    if (const auto* g = std::get_if<GaussPoint>(&x)) {
        bool center0 = true;
        for (const auto& c : g->center) center0 = center0 && c == 0;
        if (center0) {
            if (rp == g->rho) return x;
            return GaussPoint{rp, g->center, g->radii};
        }
    }
    if (rp == rho_of(x) && t <= 0.0) return x;
    return DerivedToric{"J", std::clamp(t, 0.0, 1.0), rp,
                        std::make_shared<const ToricPoint>(x)};
}

// -------------------------------------------------------------------------
// Skeleton membership: exact closed form on Gauss points, probe equality
// |f(x)| = max_mu |a_mu(x)| |T^mu(x)| on derived points.

inline std::vector<MultiPoly> default_toric_probes(int n, const BaseRingSpec& spec) {
    std::vector<MultiPoly> ps;
    for (int i = 0; i < n; ++i) ps.push_back(MultiPoly::variable(n, i));
    for (int i = 0; i < n; ++i)
        ps.push_back(MultiPoly::variable(n, i) + MultiPoly::constant(n, Rational(1)));
    // Unit centers are invisible to alpha when the base norm is weak, so the
    // family needs linear probes at the common sample centers.
    for (int i = 0; i < n; ++i)
        ps.push_back(MultiPoly::variable(n, i) + MultiPoly::constant(n, Rational(-1)));
    ps.push_back(MultiPoly::variable(n, 0) +
                 MultiPoly::constant(n, Rational(spec.p)));
    ps.push_back(MultiPoly::variable(n, 0) +
                 MultiPoly::constant(n, Rational(-spec.p)));
    if (spec.p != 2)
        ps.push_back(MultiPoly::variable(n, 0) + MultiPoly::constant(n, Rational(-2)));
    if (n >= 2) {
        ps.push_back(MultiPoly::variable(n, 0) * MultiPoly::variable(n, 1));
        ps.push_back(MultiPoly::variable(n, 0) +
                     MultiPoly::variable(n, 1) * MultiPoly::constant(n, Rational(spec.p)));
    } else {
        ps.push_back(MultiPoly::variable(n, 0) * MultiPoly::variable(n, 0) +
                     MultiPoly::constant(n, Rational(spec.p)));
    }
    return ps;
}

inline bool skeleton_member(const BaseRingSpec& spec, const ToricPoint& x,
                            const std::vector<MultiPoly>& probes = {}, double tol = 1e-9) {
    if (const auto* g = std::get_if<GaussPoint>(&x)) {
        for (size_t i = 0; i < g->center.size(); ++i)
            if (alpha(spec, g->rho, g->center[i]) > g->radii[i]) return false;
        return true;
    }
    auto ps = probes.empty() ? default_toric_probes(dim_of(x), spec) : probes;
    for (const auto& f : ps) {
        double lhs = toric_eval(spec, x, f);
        double rhs = 0.0;
        for (const auto& [mu, a] : f.terms) {
            double s = alpha(spec, rho_of(x), a);
            rhs = std::max(rhs, s * toric_eval(spec, x,
                                               MultiPoly::monomial(f.n, mu, Rational(1))));
        }
        if (!norm_close_rel(lhs, rhs, tol)) return false;
    }
    return true;
}

// -------------------------------------------------------------------------
// Probe metric and homotopy wrappers for the axiom suites. Membership and
// distance must share one probe family, or a weakly separating family lets a
// moving point slip into the target early.

inline double toric_probe_distance(const BaseRingSpec& spec, const ToricPoint& a,
                                   const ToricPoint& b, std::vector<MultiPoly> probes = {}) {
    auto ps = probes.empty() ? default_toric_probes(std::max(dim_of(a), dim_of(b)), spec)
                             : std::move(probes);
    double d = std::abs(rho_of(a) - rho_of(b));
    for (const auto& f : ps) {
        double va = toric_eval(spec, a, f);
        double vb = toric_eval(spec, b, f);
        double den = std::max({1.0, std::abs(va), std::abs(vb)});
        d = std::max(d, std::abs(va - vb) / den);
    }
    return d;
}

inline Homotopy<ToricPoint> q_homotopy(const BaseRingSpec& spec, int n,
                                       std::vector<MultiPoly> probes = {}) {
    auto ps = std::make_shared<const std::vector<MultiPoly>>(
        probes.empty() ? default_toric_probes(n, spec) : std::move(probes));
    Homotopy<ToricPoint> H;
    H.name = "q";
    H.eval = [spec](double t, const ToricPoint& x) { return q_point(spec, t, x); };
    H.domain = nullptr;
    H.target = [spec, ps](const ToricPoint& x) { return skeleton_member(spec, x, *ps); };
    H.fixed = H.target;
    return H;
}

inline Homotopy<ToricPoint> j_homotopy(const BaseRingSpec& spec, int n,
                                       std::vector<MultiPoly> probes = {}) {
    auto ps = std::make_shared<const std::vector<MultiPoly>>(
        probes.empty() ? default_toric_probes(n, spec) : std::move(probes));
    Homotopy<ToricPoint> H;
    H.name = "J";
    H.eval = [spec](double t, const ToricPoint& x) { return j_point(spec, t, x); };
    H.domain = [spec, ps](const ToricPoint& x) { return skeleton_member(spec, x, *ps); };
    H.target = [spec, ps](const ToricPoint& x) {
        return rho_of(x) == 0.0 && skeleton_member(spec, x, *ps);
    };
    H.fixed = H.target;
    return H;
}

}  // namespace hyb
