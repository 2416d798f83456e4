#pragma once

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "hyb/dedekind.hpp"
#include "hyb/discs.hpp"
#include "hyb/errors.hpp"
#include "hyb/irreducibles.hpp"

namespace hyb {

// Schematic figure renderer. Layout rules are fixed constants: the figures
// are qualitative, so the only contracts are the element counts and byte
// determinism (all numbers printed with three decimals).

struct RenderSpec {
    enum class Subject { TrivLine, Disc, SpectrumZ };
    Subject subject = Subject::TrivLine;
    int branches = 5;  // trivline: branch count; spectrumZ: prime bound
    int size = 480;
};

namespace svgdetail {

inline std::string f3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

inline std::string poly_label(const Polynomial<Rational>& p) {
    std::ostringstream os;
    bool first = true;
    for (int d = p.degree(); d >= 0; --d) {
        const Rational& a = p.c[static_cast<size_t>(d)];
        if (a == 0) continue;
        bool neg = a < 0;
        Rational mag = neg ? Rational(-a) : a;
        os << (first ? (neg ? "-" : "") : (neg ? "-" : "+"));
        first = false;
        if (mag != 1 || d == 0) os << rat_str(mag);
        if (d >= 1) os << "T";
        if (d >= 2) os << "^" << d;
    }
    if (first) os << "0";
    return os.str();
}

inline void line(std::ostringstream& os, const char* cls, double x0, double y0, double x1,
                 double y1) {
    os << "<path class=\"" << cls << "\" d=\"M " << f3(x0) << "," << f3(y0) << " L " << f3(x1)
       << "," << f3(y1) << "\"/>\n";
}

inline void text(std::ostringstream& os, double x, double y, const std::string& s) {
    os << "<text x=\"" << f3(x) << "\" y=\"" << f3(y) << "\">" << s << "</text>\n";
}

inline void render_trivline(std::ostringstream& os, int N, double S) {
    const double cx = S * 0.5;
    const double top = S * 0.08, mid = S * 0.40, bottom = S * 0.92;
    // Spine [eta_{0,0}, eta_{0,inf}): r = 0 at the bottom, open upper end.
    os << "<line class=\"spine\" x1=\"" << f3(cx) << "\" y1=\"" << f3(bottom) << "\" x2=\""
       << f3(cx) << "\" y2=\"" << f3(top) << "\"/>\n";
    os << "<circle class=\"open\" cx=\"" << f3(cx) << "\" cy=\"" << f3(top) << "\" r=\""
       << f3(S * 0.008) << "\"/>\n";
    text(os, cx + S * 0.02, bottom, "r=0");
    text(os, cx + S * 0.02, mid, "r=1");
    text(os, cx + S * 0.02, top + S * 0.02, "r=inf");
    // Branches attach at r = 1, where all eta_{p,r>=1} coincide, and fan
    // downward toward their r = 0 endpoints: branch k of N sits at
    // 210 + (k + 1/2) * 120 / N degrees, length 0.38 * S.
    auto irr = enumerate_irreducibles<Rational>(N);
    const double L = S * 0.38;
    for (int k = 0; k < N; ++k) {
        double deg = 210.0 + (k + 0.5) * 120.0 / N;
        double a = deg * M_PI / 180.0;
        double x1 = cx + L * std::cos(a);
        double y1 = mid - L * std::sin(a);
        line(os, "branch", cx, mid, x1, y1);
        text(os, x1 - S * 0.04, y1 + S * 0.03, poly_label(irr[static_cast<size_t>(k)].first));
    }
}

inline void render_disc(std::ostringstream& os, double S) {
    // Chart of D(T, 1/4) in coordinates x = |z|, y = t, t = 0 at the bottom.
    // Cells are shaded by region_member at the Archimedean sample ev(|z|, t);
    // the wall |T|^t = chi(t) is traced by bisecting the membership flip per
    // row, the axis |z| = 0 is the rest of N+, the top edge t = delta is E.
    const double delta = 0.25;
    const auto spec = DiscSpec<Rational>::finite(Polynomial<Rational>::variable(), delta);
    const double umax = 1.6 * delta;
    const int G = 24;
    const double x0 = S * 0.10, y0 = S * 0.10, w = S * 0.72, h = S * 0.72;
    auto px = [&](double u) { return x0 + w * u / umax; };
    auto py = [&](double t) { return y0 + h - h * t / delta; };
    auto member = [&](double u, double t) {
        return region_member(make_arch<Rational>({u, 0.0}, t), spec, RegionTag::D);
    };
    for (int i = 0; i < G; ++i) {
        for (int j = 0; j < G; ++j) {
            double u = (i + 0.5) / G * umax;
            double t = (j + 0.5) / G * delta;
            os << "<rect class=\"" << (member(u, t) ? "rD" : "rOut") << "\" x=\""
               << f3(x0 + w * i / G) << "\" y=\"" << f3(y0 + h - h * (j + 1) / G) << "\" width=\""
               << f3(w / G) << "\" height=\"" << f3(h / G) << "\"/>\n";
        }
    }
    os << "<path class=\"skeleton\" d=\"";
    for (int j = 0; j <= G; ++j) {
        double t = std::max(1e-6, static_cast<double>(j) / G) * delta;
        double lo = 0.0, hi = umax;
        for (int it = 0; it < 40; ++it) {
            double mid = 0.5 * (lo + hi);
            (member(mid, t) ? lo : hi) = mid;
        }
        os << (j == 0 ? "M " : " L ") << f3(px(lo)) << "," << f3(py(t));
    }
    os << "\"/>\n";
    line(os, "axis", px(0.0), py(0.0), px(0.0), py(delta));
    line(os, "boundary", px(0.0), py(delta), px(delta), py(delta));
    os << "<rect class=\"frame\" x=\"" << f3(x0) << "\" y=\"" << f3(y0) << "\" width=\"" << f3(w)
       << "\" height=\"" << f3(h) << "\"/>\n";
    text(os, px(delta) + S * 0.02, py(delta) - S * 0.01, "E");
    text(os, px(umax * 0.55), py(delta * 0.55), "N");
    text(os, x0, y0 + h + S * 0.05, "|z|=0");
    text(os, x0 + w - S * 0.06, y0 + h + S * 0.05, "|z|");
    text(os, x0 - S * 0.07, y0 + h, "t=0");
    text(os, x0 - S * 0.08, y0 + S * 0.02, "t=delta");
}

inline void render_spectrum_rays(std::ostringstream& os, Ring ring, long bound, double S) {
    // Star of the spectrum: one ray per prime ideal below the bound, plus the
    // Archimedean ray; ray j of m sits at -90 + 360 j / m degrees.
    auto ideals = prime_ideals(ring, bound);
    const double cx = S * 0.5, cy = S * 0.5, L = S * 0.36;
    const int m = static_cast<int>(ideals.size()) + 1;
    for (int j = 0; j < m; ++j) {
        double a = (-90.0 + 360.0 * j / m) * M_PI / 180.0;
        double x1 = cx + L * std::cos(a);
        double y1 = cy + L * std::sin(a);
        bool arch = j == m - 1;
        line(os, arch ? "arch" : "prime", cx, cy, x1, y1);
        std::string label = "inf";
        if (!arch) {
            const auto& id = ideals[static_cast<size_t>(j)];
            label = std::to_string(id.re);
            if (id.im > 0) label += "+" + std::to_string(id.im) + "i";
        }
        text(os, cx + (L + S * 0.04) * std::cos(a) - S * 0.01,
             cy + (L + S * 0.04) * std::sin(a) + S * 0.01, label);
    }
    os << "<circle class=\"generic\" cx=\"" << f3(cx) << "\" cy=\"" << f3(cy) << "\" r=\""
       << f3(S * 0.01) << "\"/>\n";
}

inline void svg_head(std::ostringstream& os, int size) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
       << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
    os << "<style>\n"
          "line.spine{stroke:#1f3b73;stroke-width:3}\n"
          "path.branch{stroke:#3d7a4f;stroke-width:2;fill:none}\n"
          "path.prime{stroke:#3d7a4f;stroke-width:2;fill:none}\n"
          "path.arch{stroke:#b04a3a;stroke-width:2;fill:none}\n"
          "path.boundary{stroke:#b04a3a;stroke-width:3;fill:none}\n"
          "rect.rD{fill:#9ec2e0}rect.rOut{fill:#f2f2f2}\n"
          "path.skeleton{stroke:#1f3b73;stroke-width:2;fill:none}\n"
          "path.axis{stroke:#4f86b8;stroke-width:2;fill:none}\n"
          "rect.frame{fill:none;stroke:#1f3b73;stroke-width:1}\n"
          "circle.open{fill:#ffffff;stroke:#1f3b73}\n"
          "circle.generic{fill:#1f3b73}\n"
          "text{font:10px monospace;fill:#222222}\n"
          "</style>\n";
}

}  // namespace svgdetail

inline std::string render_svg(const RenderSpec& spec) {
    if (spec.branches < 1) throw DomainError("BadBranchCount", "render needs N >= 1");
    if (spec.size < 64) throw DomainError("BadRenderSize", "render needs size >= 64");
    const double S = spec.size;
    std::ostringstream os;
    svgdetail::svg_head(os, spec.size);
    switch (spec.subject) {
        case RenderSpec::Subject::TrivLine:
            svgdetail::render_trivline(os, spec.branches, S);
            break;
        case RenderSpec::Subject::Disc:
            svgdetail::render_disc(os, S);
            break;
        case RenderSpec::Subject::SpectrumZ:
            svgdetail::render_spectrum_rays(os, Ring::Z, spec.branches, S);
            break;
    }
    os << "</svg>\n";
    return os.str();
}

// Star figure for either ring of integers, used by the spectrum command.
inline std::string render_spectrum_star(Ring ring, long bound, int size) {
    if (bound < 3) throw DomainError("BadBranchCount", "spectrum bound must be >= 3");
    if (size < 64) throw DomainError("BadRenderSize", "render needs size >= 64");
    std::ostringstream os;
    svgdetail::svg_head(os, size);
    svgdetail::render_spectrum_rays(os, ring, bound, size);
    os << "</svg>\n";
    return os.str();
}

}  // namespace hyb
