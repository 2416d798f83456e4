#pragma once

#include "hyb/errors.hpp"
#include "hyb/polynomial.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace hyb {

namespace detail {

inline std::complex<double> horner(const std::vector<std::complex<double>>& c,
                                   const std::complex<double>& z) {
    std::complex<double> acc(0.0, 0.0);
    for (size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
}

inline double coeff_scale_at(const std::vector<std::complex<double>>& c, double az) {
    double s = 0.0, zp = 1.0;
    for (const auto& ci : c) {
        s += std::abs(ci) * zp;
        zp *= std::max(az, 1e-300);
    }
    return std::max(s, 1e-300);
}

}  // namespace detail

/**
 * Aberth-Ehrlich simultaneous root iteration. Deterministic: initial guesses sit
 * on a circle whose radius comes from the constant/lead coefficient ratio, with
 * a fixed angular offset. Residuals are measured in backward-error style, so
 * clustered (multiple) roots converge to the cluster within ~1e-6 even though
 * each individual Newton step stalls there.
 */
inline std::vector<std::complex<double>> roots_numeric(std::vector<std::complex<double>> c,
                                                       int max_iter = 400) {
    while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
    if (c.size() <= 1) throw DomainError("BadPolynomial", "roots of a constant polynomial");
    std::vector<std::complex<double>> roots;
    size_t nz = 0;
    while (nz < c.size() && std::abs(c[nz]) == 0.0) ++nz;
    for (size_t i = 0; i < nz; ++i) roots.push_back({0.0, 0.0});
    c.erase(c.begin(), c.begin() + static_cast<long>(nz));
    size_t n = c.size() - 1;
    if (n == 0) return roots;

    std::vector<std::complex<double>> dc(n);
    for (size_t i = 1; i <= n; ++i) dc[i - 1] = static_cast<double>(i) * c[i];

    double r0 = std::pow(std::abs(c.front() / c.back()), 1.0 / static_cast<double>(n));
    r0 = std::min(std::max(r0, 0.5), 1e6);
    std::vector<std::complex<double>> z(n);
    for (size_t j = 0; j < n; ++j) {
        double th = 2.0 * M_PI * (static_cast<double>(j) + 0.25) / static_cast<double>(n) + 0.5;
        z[j] = r0 * std::complex<double>(std::cos(th), std::sin(th));
    }

    for (int it = 0; it < max_iter; ++it) {
        double worst = 0.0;
        for (size_t j = 0; j < n; ++j) {
            auto pj = detail::horner(c, z[j]);
            worst = std::max(worst, std::abs(pj) / detail::coeff_scale_at(c, std::abs(z[j])));
            auto dpj = detail::horner(dc, z[j]);
            std::complex<double> w;
            if (std::abs(dpj) > 0.0) {
                w = pj / dpj;
            } else {
                w = std::complex<double>(1e-8, 1e-8);
            }
            std::complex<double> sum(0.0, 0.0);
            for (size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                auto d = z[j] - z[k];
                if (std::abs(d) < 1e-300) d = std::complex<double>(1e-300, 0.0);
                sum += 1.0 / d;
            }
            auto denom = 1.0 - w * sum;
            if (std::abs(denom) < 1e-300) denom = 1e-300;
            z[j] -= w / denom;
        }
        if (worst < 1e-13 && it >= 2) {
            roots.insert(roots.end(), z.begin(), z.end());
            return roots;
        }
    }
    // accept clustered multiple roots whose backward error is still tiny
    double worst = 0.0;
    for (size_t j = 0; j < n; ++j)
        worst = std::max(worst, std::abs(detail::horner(c, z[j])) /
                                    detail::coeff_scale_at(c, std::abs(z[j])));
    if (worst < 1e-10) {
        roots.insert(roots.end(), z.begin(), z.end());
        return roots;
    }
    throw NumericError("NoConvergence", "root iteration did not converge");
}

template <class K>
std::vector<std::complex<double>> roots_numeric(const Polynomial<K>& p, int max_iter = 400) {
    return roots_numeric(p.complex_coeffs(), max_iter);
}

}  // namespace hyb
