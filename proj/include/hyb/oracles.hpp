#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hyb/errors.hpp"
#include "hyb/homotopy.hpp"
#include "hyb/norm_value.hpp"
#include "hyb/polynomial.hpp"
#include "hyb/rational.hpp"
#include "hyb/roots.hpp"
#include "hyb/toric.hpp"

namespace hyb {

// -------------------------------------------------------------------------
// Probe families: deterministic monomials up to degree 8 plus seeded random
// polynomials. The seed travels with the family so a report can name it.

struct ProbeFamily {
    unsigned seed = 0;
    std::vector<Polynomial<Rational>> polys;
};

inline ProbeFamily make_probe_family(unsigned seed, int n_random = 6, int max_degree = 4) {
    ProbeFamily fam;
    fam.seed = seed;
    for (int k = 0; k <= 8; ++k) {
        std::vector<Rational> c(static_cast<size_t>(k) + 1, Rational(0));
        c.back() = Rational(1);
        fam.polys.emplace_back(std::move(c));
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> deg(1, max_degree);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 3);
    for (int j = 0; j < n_random; ++j) {
        int d = deg(rng);
        std::vector<Rational> c(static_cast<size_t>(d) + 1);
        for (auto& a : c) a = Rational(num(rng), den(rng));
        while (c.back() == 0) c.back() = Rational(num(rng), den(rng));
        fam.polys.emplace_back(std::move(c));
    }
    return fam;
}

// -------------------------------------------------------------------------
// Brute-force eta evaluation. Root-find p numerically, Taylor-shift f to each
// root, threshold coefficients at 1e-6 relative, take max |a_i|_0 r^i. For a
// squarefree p the closed form r^{mult(p,f)} equals the maximum over the
// conjugate expansions, so the oracle scans every root.

namespace detail {

// Taylor coefficients of the ascending-coefficient poly c around z, by
// repeated synthetic division by (T - z).
inline std::vector<std::complex<double>> taylor_coeffs(std::vector<std::complex<double>> c,
                                                       std::complex<double> z) {
    std::vector<std::complex<double>> out;
    out.reserve(c.size());
    while (c.size() > 1) {
        std::vector<std::complex<double>> q(c.size() - 1);
        q.back() = c.back();
        for (size_t i = c.size() - 2; i >= 1; --i) q[i - 1] = c[i] + z * q[i];
        out.push_back(c[0] + z * q[0]);
        c = std::move(q);
    }
    if (!c.empty()) out.push_back(c[0]);
    return out;
}

}  // namespace detail

inline NormValue taylor_norm_oracle(const Polynomial<Rational>& f, const Polynomial<Rational>& p,
                                    double r) {
    if (r < 0.0) throw DomainError("BadRadius", "negative radius in taylor_norm_oracle");
    if (f.is_zero()) return NormValue::from_rational(Rational(0));
    if (f.degree() == 0) return NormValue::from_rational(Rational(1));
    auto roots = roots_numeric(p);
    auto fc = f.complex_coeffs();
    double best = 0.0;
    for (const auto& z : roots) {
        auto b = detail::taylor_coeffs(fc, z);
        double scale = 0.0;
        for (const auto& bi : b) scale = std::max(scale, std::abs(bi));
        double val = 0.0;
        for (size_t i = 0; i < b.size(); ++i)
            if (std::abs(b[i]) > 1e-6 * scale)
                val = std::max(val, std::pow(r, static_cast<double>(i)));
        best = std::max(best, val);
    }
    return NormValue::from_double(best);
}

// -------------------------------------------------------------------------
// SDR axiom suite. Encodes the homotopy invariants plus the stopping
// hypothesis of the gluing lemma: once a trajectory enters the target it
// never moves again. The distance comes from the caller, so every point
// model supplies its own probe metric.

struct AxiomReport {
    std::string homotopy;
    long samples = 0;  // points drawn
    long pairs = 0;    // (t, x) evaluations
    long identity_fail = 0;
    long target_fail = 0;
    long fixed_fail = 0;
    long stopping_fail = 0;
    std::string first_counterexample;

    bool pass() const {
        return identity_fail == 0 && target_fail == 0 && fixed_fail == 0 && stopping_fail == 0;
    }
};

template <class P>
struct AxiomSampler {
    std::function<P(std::mt19937_64&)> draw;
    std::function<double(const P&, const P&)> distance;
    std::function<std::string(const P&)> describe;  // may be null
};

template <class P>
AxiomReport sdr_axiom_suite(const Homotopy<P>& H, const AxiomSampler<P>& sampler, int trials,
                            double tol, unsigned seed = 0x5d7u, int grid = 16) {
    AxiomReport rep;
    rep.homotopy = H.name;
    std::mt19937_64 rng(seed);
    auto witness = [&](const char* axiom, double t, double d, const P& x) {
        if (!rep.first_counterexample.empty()) return;
        std::ostringstream os;
        os << H.name << ": " << axiom << " at t=" << t;
        if (d >= 0.0) os << " dist=" << d;
        if (sampler.describe) os << " x=" << sampler.describe(x);
        rep.first_counterexample = os.str();
    };
    for (int trial = 0; trial < trials; ++trial) {
        P x = sampler.draw(rng);
        if (H.domain) {
            int guard = 0;
            while (!H.domain(x) && ++guard < 256) x = sampler.draw(rng);
            if (!H.domain(x))
                throw DomainError("BadSampler", "sampler cannot reach the homotopy domain");
        }
        ++rep.samples;
        std::vector<P> traj;
        traj.reserve(static_cast<size_t>(grid) + 1);
        for (int k = 0; k <= grid; ++k)
            traj.push_back(H(static_cast<double>(k) / grid, x));
        rep.pairs += grid + 1;

        double d0 = sampler.distance(traj.front(), x);
        if (!(d0 <= tol)) {
            ++rep.identity_fail;
            witness("identity", 0.0, d0, x);
        }
        if (H.target && !H.target(traj.back())) {
            ++rep.target_fail;
            witness("target", 1.0, -1.0, x);
        }
        bool in_fixed = H.fixed ? H.fixed(x) : (H.target && H.target(x));
        if (in_fixed) {
            for (int k = 0; k <= grid; ++k) {
                double d = sampler.distance(traj[static_cast<size_t>(k)], x);
                if (!(d <= tol)) {
                    ++rep.fixed_fail;
                    witness("fixed", static_cast<double>(k) / grid, d, x);
                    break;
                }
            }
        }
        if (H.target) {
            int entered = -1;
            for (int k = 0; k <= grid; ++k) {
                if (entered < 0) {
                    if (H.target(traj[static_cast<size_t>(k)])) entered = k;
                    continue;
                }
                double d = sampler.distance(traj[static_cast<size_t>(k)],
                                            traj[static_cast<size_t>(entered)]);
                if (!(d <= tol)) {
                    ++rep.stopping_fail;
                    witness("stopping", static_cast<double>(k) / grid, d, x);
                    break;
                }
            }
        }
    }
    return rep;
}

}  // namespace hyb
