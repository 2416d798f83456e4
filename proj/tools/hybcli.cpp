#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "hyb/dedekind.hpp"
#include "hyb/json_io.hpp"
#include "hyb/retractions.hpp"
#include "hyb/selftest.hpp"
#include "hyb/svg.hpp"

namespace {

using hyb::Json;

struct IoFailure {
    std::string msg;
};

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure{"cannot open " + path};
    std::ostringstream os;
    os << in.rdbuf();
    if (in.bad()) throw IoFailure{"cannot read " + path};
    return os.str();
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure{"cannot open " + path + " for writing"};
    out << body;
    out.flush();
    if (!out) throw IoFailure{"cannot write " + path};
}

Json parse_json_file(const std::string& path) {
    const std::string text = read_text(path);
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw hyb::DomainError("BadJson", path + ": " + e.what());
    }
}

// Gaussian inputs carry {re,im} coefficient objects inside "p" arrays (or are
// bare polynomial arrays with object entries); everything else runs over Q.
bool wants_gauss(const Json& j) {
    if (j.is_array()) {
        for (const auto& c : j)
            if (c.is_object()) return true;
        return false;
    }
    if (!j.is_object()) return false;
    auto p = j.find("p");
    if (p != j.end() && p->is_array())
        for (const auto& c : *p)
            if (c.is_object()) return true;
    auto b = j.find("base");
    if (b != j.end()) return wants_gauss(*b);
    return false;
}

struct GlobalOpts {
    unsigned long long seed = 20260814ull;
    double tol = 1e-9;
    bool json = false;
};

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
    std::string point_file, poly_file;
};

template <class K>
int run_eval_t(const GlobalOpts& g, const Json& jp, const Json& jf) {
    auto x = hyb::point_from_json<K>(jp);
    auto f = hyb::poly_from_json<K>(jf);
    hyb::NormValue v = hyb::seminorm(x, f);
    if (g.json) {
        Json out{{"value", hyb::sig12(v.v)}, {"exact", v.exact}};
        std::cout << out.dump() << "\n";
    } else {
        std::cout << hyb::norm_value_text(v) << "\n";
    }
    return 0;
}

int run_eval(const GlobalOpts& g, const EvalArgs& a) {
    Json jp = parse_json_file(a.point_file);
    Json jf = parse_json_file(a.poly_file);
    if (wants_gauss(jp) || wants_gauss(jf)) return run_eval_t<hyb::GaussRational>(g, jp, jf);
    return run_eval_t<hyb::Rational>(g, jp, jf);
}

// ---------------------------------------------------------------------------
// classify

struct ClassifyArgs {
    std::string point_file;
    int depth = 4;
};

template <class K>
int run_classify_t(const GlobalOpts& g, const Json& jp, int depth) {
    auto x = hyb::point_from_json<K>(jp);
    auto sched = hyb::make_schedule<K>(depth);
    Json memberships = Json::array();
    auto add = [&](const std::string& label, const hyb::DiscSpec<K>& spec, bool with_nplus) {
        static const std::pair<const char*, hyb::RegionTag> tags[] = {
            {"D", hyb::RegionTag::D},
            {"C", hyb::RegionTag::C},
            {"E", hyb::RegionTag::E},
            {"N", hyb::RegionTag::N},
            {"N+", hyb::RegionTag::Nplus},
        };
        for (const auto& [name, tag] : tags) {
            if (!with_nplus && tag == hyb::RegionTag::Nplus) continue;
            memberships.push_back(Json{{"disc", label},
                                       {"tag", name},
                                       {"member", hyb::region_member(x, spec, tag, g.tol)}});
        }
    };
    add("inf@" + hyb::sig12(sched.e0), hyb::DiscSpec<K>::infinity(sched.e0), false);
    for (const auto& st : sched.stages)
        add(hyb::svgdetail::poly_label(st.p) + "@" + hyb::sig12(st.e),
            hyb::DiscSpec<K>::finite(st.p, st.e), true);
    Json out{{"lambda", hyb::lambda_of(x)}, {"memberships", memberships}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_classify(const GlobalOpts& g, const ClassifyArgs& a) {
    Json jp = parse_json_file(a.point_file);
    if (wants_gauss(jp)) throw hyb::UnsupportedError("UnsupportedPointKind",
                                                     "classify runs over the rational line");
    return run_classify_t<hyb::Rational>(g, jp, a.depth);
}

// ---------------------------------------------------------------------------
// retract

struct RetractArgs {
    std::string map, point_file, center = "0", center_im = "0";
    double time = 1.0;
    double delta = 0.0;  // 0 = per-map default
    double delta2 = 0.25;
    int depth = 8;
    int trace = 0;
};

hyb::Polynomial<hyb::Rational> parse_poly_arg(const std::string& s) {
    if (s == "T") return hyb::Polynomial<hyb::Rational>::variable();
    std::vector<hyb::Rational> c;
    std::string tok;
    std::istringstream is(s);
    while (std::getline(is, tok, ','))
        c.push_back(hyb::jsondetail::parse_rational(tok, "--map disc coefficients"));
    if (c.empty()) throw hyb::DomainError("BadPolynomial", "empty coefficient list after disc:");
    return hyb::Polynomial<hyb::Rational>(std::move(c));
}

template <class K>
int run_retract_t(const RetractArgs& a, const Json& jp) {
    auto x = hyb::point_from_json<K>(jp);

    hyb::Homotopy<hyb::HybridPoint<K>> h;
    bool global_endpoint = false;
    std::shared_ptr<hyb::GlobalSdr<K>> sdr;
    if (a.map == "rz") {
        K z(hyb::jsondetail::parse_rational(a.center, "--center"));
        if constexpr (std::is_same_v<K, hyb::GaussRational>)
            z.im = hyb::jsondetail::parse_rational(a.center_im, "--center-im");
        h = hyb::rz_homotopy<K>(z);
    } else if (a.map == "R") {
        double d = a.delta > 0.0 ? a.delta : 1.0;
        h = hyb::squeeze_homotopy<K>(d, a.delta2);
    } else if (a.map == "cyl") {
        h = hyb::model_disc_homotopy<K>(a.delta > 0.0 ? a.delta : 1.0);
    } else if (a.map == "infinity") {
        h = hyb::infinity_disc_homotopy<K>(a.delta > 0.0 ? a.delta : 0.25);
    } else if (a.map.rfind("disc:", 0) == 0) {
        if constexpr (std::is_same_v<K, hyb::GaussRational>) {
            throw hyb::UnsupportedError("UnsupportedPointKind",
                                        "disc retractions on the CLI run over the rational line");
        } else {
            auto p = parse_poly_arg(a.map.substr(5));
            double thr = hyb::delta_threshold(p);
            double d = a.delta > 0.0 ? a.delta : std::min(0.25, thr);
            h = hyb::gn_homotopy(p, d);
        }
    } else if (a.map == "global") {
        sdr = std::make_shared<hyb::GlobalSdr<K>>(hyb::make_global_sdr<K>(a.depth));
        h = sdr->full;
        global_endpoint = true;
    } else {
        throw hyb::DomainError("BadMap", "unknown retraction map '" + a.map + "'");
    }

    auto emit = [&](double t) -> Json {
        if (global_endpoint && t >= 1.0) {
            auto res = hyb::global_sdr(*sdr, 1.0, x);
            Json j = hyb::point_to_json(res.pt);
            if (res.truncated) j["truncated"] = true;
            return j;
        }
        return hyb::point_to_json(h(t, x));
    };

    if (a.trace > 0) {
        Json arr = Json::array();
        int k = std::max(2, a.trace);
        for (int i = 0; i < k; ++i) arr.push_back(emit(a.time * i / (k - 1)));
        std::cout << arr.dump(2) << "\n";
    } else {
        std::cout << emit(a.time).dump(2) << "\n";
    }
    return 0;
}

int run_retract(const RetractArgs& a) {
    Json jp = parse_json_file(a.point_file);
    if (wants_gauss(jp)) return run_retract_t<hyb::GaussRational>(a, jp);
    return run_retract_t<hyb::Rational>(a, jp);
}

// ---------------------------------------------------------------------------
// skeleton

struct SkeletonArgs {
    std::string base = "hyb:2", point_file, f_file;
    int dim = 1;
    double t = 1.0;
};

hyb::BaseRingSpec parse_base(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos)
        throw hyb::DomainError("BadPrime", "--base must look like hyb:p or dvr:p");
    std::string kind = s.substr(0, colon);
    long p = 0;
    try {
        p = std::stol(s.substr(colon + 1));
    } catch (const std::exception&) {
        throw hyb::DomainError("BadPrime", "--base prime '" + s.substr(colon + 1) + "'");
    }
    if (kind == "hyb") return hyb::BaseRingSpec::hybrid_field(p);
    if (kind == "dvr") return hyb::BaseRingSpec::dvr(p);
    throw hyb::DomainError("BadPrime", "--base kind must be hyb or dvr");
}

hyb::MultiPoly multipoly_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("terms"))
        throw hyb::DomainError("BadPolynomial", "expected {\"n\":…, \"terms\":[…]}");
    int n = j["n"].get<int>();
    if (n < 1) throw hyb::DomainError("BadPolynomial", "need n >= 1");
    hyb::MultiPoly f = hyb::MultiPoly::zero(n);
    for (const auto& term : j["terms"]) {
        const Json& muj = term.at("mu");
        hyb::MultiIndex mu;
        for (const auto& e : muj) mu.push_back(e.get<int>());
        if (static_cast<int>(mu.size()) != n)
            throw hyb::DomainError("BadPolynomial", "term exponent length != n");
        f.add_term(mu, hyb::jsondetail::parse_rational(term.at("c").get<std::string>(),
                                                       "polynomial term"));
    }
    return f;
}

int run_skeleton(const SkeletonArgs& a) {
    auto spec = parse_base(a.base);
    auto x = hyb::toric_from_json(parse_json_file(a.point_file));
    if (hyb::dim_of(x) != a.dim)
        throw hyb::DomainError("BadPoint", "--dim does not match the point dimension");
    if (!a.f_file.empty()) {
        auto f = multipoly_from_json(parse_json_file(a.f_file));
        if (f.n != a.dim) throw hyb::DomainError("BadPolynomial", "polynomial arity != --dim");
        std::cout << hyb::sig12(hyb::q_eval(spec, a.t, x, f)) << "\n";
        return 0;
    }
    std::cout << hyb::toric_to_json(hyb::q_point(spec, a.t, x)).dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// spectrum / retract-integers

struct SpectrumArgs {
    std::string ring = "Z", render_path;
    long bound = 12;
    int size = 480;
};

int run_spectrum(const SpectrumArgs& a) {
    hyb::Ring ring;
    if (a.ring == "Z")
        ring = hyb::Ring::Z;
    else if (a.ring == "Zi")
        ring = hyb::Ring::Zi;
    else
        throw hyb::DomainError("BadPrime", "--ring must be Z or Zi");
    Json ideals = Json::array();
    for (const auto& id : hyb::prime_ideals(ring, a.bound))
        ideals.push_back(Json{{"p", id.p}, {"re", id.re}, {"im", id.im}});
    Json out{{"ring", a.ring}, {"bound", a.bound}, {"ideals", ideals}};
    std::cout << out.dump(2) << "\n";
    if (!a.render_path.empty())
        write_text(a.render_path, hyb::render_spectrum_star(ring, a.bound, a.size));
    return 0;
}

struct RetractIntArgs {
    std::string point_file;
    double time = 1.0;
    int depth = 8;
};

int run_retract_integers(const RetractIntArgs& a) {
    auto L = hyb::make_integer_line_sdr(a.depth);
    auto x = hyb::int_line_from_json(parse_json_file(a.point_file));
    std::cout << hyb::int_line_to_json(hyb::assembled_sdr(L, a.time, x)).dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// render / selftest

struct RenderArgs {
    std::string subject = "trivline", out;
    int branches = 5;
    int size = 480;
};

int run_render(const RenderArgs& a) {
    hyb::RenderSpec spec;
    if (a.subject == "trivline")
        spec.subject = hyb::RenderSpec::Subject::TrivLine;
    else if (a.subject == "disc")
        spec.subject = hyb::RenderSpec::Subject::Disc;
    else if (a.subject == "spectrumZ")
        spec.subject = hyb::RenderSpec::Subject::SpectrumZ;
    else
        throw hyb::DomainError("BadPoint", "--subject must be trivline, disc, or spectrumZ");
    spec.branches = a.branches;
    spec.size = a.size;
    write_text(a.out, hyb::render_svg(spec));
    return 0;
}

struct SelftestArgs {
    std::string suite = "all", report_path;
    int trials = 200;
};

Json suite_to_json(const hyb::SuiteResult& r) {
    Json notes = Json::array();
    for (const auto& n : r.notes) notes.push_back(n);
    return Json{{"name", r.name},
                {"checks", r.checks},
                {"failures", r.failures},
                {"seconds", r.seconds},
                {"notes", notes}};
}

int run_selftest(const GlobalOpts& g, const SelftestArgs& a) {
    auto results = hyb::run_selftest(a.suite, a.trials, static_cast<unsigned>(g.seed));
    bool pass = true;
    Json suites = Json::array();
    for (const auto& r : results) {
        pass = pass && r.pass();
        suites.push_back(suite_to_json(r));
        if (!g.json) {
            std::printf("%-12s %5d checks %3d failures %7.2fs %s\n", r.name.c_str(), r.checks,
                        r.failures, r.seconds, r.pass() ? "PASS" : "FAIL");
            if (!r.pass())
                for (const auto& n : r.notes) std::printf("    %s\n", n.c_str());
        }
    }
    Json report{{"suites", suites}, {"pass", pass}};
    if (g.json) std::cout << report.dump(2) << "\n";
    if (!a.report_path.empty()) write_text(a.report_path, report.dump(2) + "\n");
    if (!pass) throw hyb::NumericError("SelftestFailure", "one or more suites failed");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hybrid-line point models, seminorms, and retractions"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--seed", g.seed, "base RNG seed");
    app.add_option("--tol", g.tol, "membership tolerance");
    app.add_flag("--json", g.json, "machine-readable stdout where supported");

    EvalArgs ev;
    auto* c_eval = app.add_subcommand("eval", "evaluate a seminorm |f(x)|");
    c_eval->add_option("point", ev.point_file, "point JSON file")->required();
    c_eval->add_option("poly", ev.poly_file, "polynomial JSON file")->required();

    ClassifyArgs cl;
    auto* c_classify = app.add_subcommand("classify", "disc/region memberships of a point");
    c_classify->add_option("--point", cl.point_file, "point JSON file")->required();
    c_classify->add_option("--depth", cl.depth, "schedule depth");

    RetractArgs rt;
    auto* c_retract = app.add_subcommand("retract", "apply a retraction homotopy");
    c_retract->add_option("--map", rt.map, "rz | R | cyl | disc:p | global | infinity")
        ->required();
    c_retract->add_option("--time", rt.time, "time in [0,1]")->required();
    c_retract->add_option("--point", rt.point_file, "point JSON file")->required();
    c_retract->add_option("--trace", rt.trace, "emit k samples along [0, time]");
    c_retract->add_option("--center", rt.center, "center for rz (rational)");
    c_retract->add_option("--center-im", rt.center_im, "imaginary part of the rz center");
    c_retract->add_option("--delta", rt.delta, "disc radius parameter");
    c_retract->add_option("--delta2", rt.delta2, "target radius for R");
    c_retract->add_option("--depth", rt.depth, "schedule depth for global");

    SkeletonArgs sk;
    auto* c_skeleton = app.add_subcommand("skeleton", "toric flow q toward the skeleton");
    c_skeleton->add_option("--dim", sk.dim, "number of torus variables")->required();
    c_skeleton->add_option("--base", sk.base, "hyb:p | dvr:p")->required();
    c_skeleton->add_option("--t", sk.t, "flow time in [0,1]")->required();
    c_skeleton->add_option("--point", sk.point_file, "toric point JSON file")->required();
    c_skeleton->add_option("--f", sk.f_file, "polynomial JSON; evaluate q instead of flowing");

    SpectrumArgs sp;
    auto* c_spectrum = app.add_subcommand("spectrum", "prime ideals of the base ring");
    c_spectrum->add_option("--ring", sp.ring, "Z | Zi")->required();
    c_spectrum->add_option("--render", sp.render_path, "write the star figure SVG here");
    c_spectrum->add_option("--bound", sp.bound, "list primes below this bound");
    c_spectrum->add_option("--size", sp.size, "figure size in pixels");

    RetractIntArgs ri;
    auto* c_ri = app.add_subcommand("retract-integers", "assembled SDR over Spec Z");
    c_ri->add_option("--time", ri.time, "time in [0,1]")->required();
    c_ri->add_option("--point", ri.point_file, "integer-line point JSON file")->required();
    c_ri->add_option("--depth", ri.depth, "schedule depth of the Arch stage");

    RenderArgs rd;
    auto* c_render = app.add_subcommand("render", "schematic SVG figures");
    c_render->add_option("--subject", rd.subject, "trivline | disc | spectrumZ")->required();
    c_render->add_option("--out", rd.out, "output SVG path")->required();
    c_render->add_option("--branches", rd.branches, "branch count / prime bound");
    c_render->add_option("--size", rd.size, "figure size in pixels");

    SelftestArgs st;
    auto* c_selftest = app.add_subcommand("selftest", "run the property suites");
    c_selftest->add_option("--suite", st.suite, "points|discs|retractions|toric|dedekind|all");
    c_selftest->add_option("--trials", st.trials, "trial count per suite");
    c_selftest->add_option("--json", st.report_path, "write the JSON report here");

    try {
        app.parse(argc, argv);
        if (c_eval->parsed()) return run_eval(g, ev);
        if (c_classify->parsed()) return run_classify(g, cl);
        if (c_retract->parsed()) return run_retract(rt);
        if (c_skeleton->parsed()) return run_skeleton(sk);
        if (c_spectrum->parsed()) return run_spectrum(sp);
        if (c_ri->parsed()) return run_retract_integers(ri);
        if (c_render->parsed()) return run_render(rd);
        if (c_selftest->parsed()) return run_selftest(g, st);
        return 2;
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const IoFailure& f) {
        std::cerr << "io error: " << f.msg << "\n";
        return 3;
    } catch (const hyb::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 4;
    } catch (const hyb::DomainError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const hyb::UnsupportedError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
}
