#pragma once
// Report, dump and verify commands; the executable in tools/ only parses flags.

#include "bdc/contact.hpp"

#include "json.hpp"

#include <chrono>
#include <fstream>
#include <ostream>
#include <random>

namespace bdc {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "bdc-report/1";

enum ExitCode { kOk = 0, kInputError = 1, kViolation = 2 };

struct CliOptions {
    int strands = 0;       // 0: infer from the word
    int budget = 200;
    int theta_width = 4;   // grading window for spectral pages
    bool json = false;
    unsigned seed = 7;
    int size = 50;
    bool timing = true;
    std::string complex_file;  // dump theta: read a complex instead of running the pipeline
};

// ---------------------------------------------------------------------------------------------
// serialization

inline Json to_json(const ClassicalInvariants& c) {
    return {{"writhe", c.writhe}, {"self_linking", c.self_linking}, {"components", c.components},
            {"sigma", c.sigma}, {"determinant", c.determinant}};
}

inline Json to_json(const FloerComplex& c) {
    Json gens = Json::array(), d = Json::array(), per = Json::object();
    for (auto& g : c.gens) gens.push_back({{"spinc", g.spinc}, {"grading", g.grading}, {"tau", g.tau}});
    for (auto& row : c.d) d.push_back(row);
    for (auto& [s, p] : c.period)
        if (p) per[std::to_string(s)] = p;
    return {{"generators", gens}, {"d", d}, {"period", per}};
}

inline FloerComplex complex_from_json(const Json& j) {
    FloerComplex c;
    for (auto& g : j.at("generators")) c.gens.push_back({g.at("spinc").get<int>(), g.at("grading").get<int>(), g.at("tau").get<int>()});
    for (auto& row : j.at("d")) c.d.push_back(row.get<std::vector<int>>());
    if (j.contains("period"))
        for (auto& [k, v] : j.at("period").items()) c.period[std::stoi(k)] = v.get<int>();
    if (c.d.size() != c.gens.size()) throw InputError("complex: d and generators differ in length");
    for (std::size_t x = 0; x < c.size(); ++x) {
        if (c.gens[x].tau < 0 || c.gens[x].tau >= static_cast<int>(c.size())) throw InputError("complex: tau out of range");
        for (int y : c.d[x])
            if (y < 0 || y >= static_cast<int>(c.size())) throw InputError("complex: d entry out of range");
    }
    return c;
}

inline Json to_json(const ThetaModule& m) {
    Json fr = Json::array(), to = Json::array();
    for (auto& f : m.free) fr.push_back({{"spinc", f.spinc}, {"bottom", f.bottom}});
    for (auto& t : m.torsion) to.push_back({{"spinc", t.spinc}, {"bottom", t.bottom}, {"length", t.length}});
    return {{"free", fr}, {"torsion", to}, {"localized_rank", m.localized_rank()}};
}

inline Json to_json(const Arc& a) {
    return {{"start", a.start}, {"word", a.word}, {"end_puncture", a.end_puncture}, {"end_gap", a.end_gap}};
}

inline Json arcs_json(const ArcSystem& s) {
    Json a = Json::array(), b = Json::array(), im = Json::array();
    for (auto& x : s.a_arcs) a.push_back(to_json(x));
    for (auto& x : s.b_arcs) b.push_back(to_json(x));
    for (auto& x : s.image_arcs) im.push_back(to_json(x));
    return {{"n", s.n}, {"base", s.base}, {"punctures", s.arc_punctures}, {"a_arcs", a}, {"b_arcs", b}, {"image_arcs", im}};
}

inline const char* kind_name(EdgeKind k) {
    return k == EdgeKind::Alpha ? "alpha" : k == EdgeKind::Beta ? "beta" : "aux";
}

inline Json bridge_json(const BridgeDiagram& bd) {
    static const char* vk[] = {"puncture", "crossing", "foot", "endpoint", "finger"};
    Json vs = Json::array(), es = Json::array();
    for (auto& v : bd.map.vertices) vs.push_back({{"kind", vk[v.kind]}, {"copy", v.copy}, {"label", v.label}});
    for (std::size_t e = 0; e < bd.map.edges.size(); ++e) {
        const auto& ed = bd.map.edges[e];
        const int h = static_cast<int>(2 * e);
        es.push_back({{"kind", kind_name(ed.kind)}, {"curve", ed.curve}, {"cut", ed.cut},
                      {"from", bd.map.halves[h].origin}, {"to", bd.map.head(h)}});
    }
    return {{"n", bd.n}, {"base", bd.base}, {"monodromy", bd.monodromy.str()}, {"vertices", vs}, {"edges", es}};
}

inline Json cover_json(const HeegaardDiagram& h) {
    int fixed = 0;
    for (int v = 0; v < h.num_vertices; ++v) fixed += h.vertex_tau[v] == v;
    Json regions = Json::array(), pts = Json::array();
    for (int r = 0; r < h.num_regions; ++r)
        regions.push_back({{"chi", h.region_chi[r]}, {"corners", h.region_corners[r]}, {"tau", h.region_tau[r]}});
    for (auto& p : h.points)
        pts.push_back({{"alpha", p.alpha}, {"beta", p.beta}, {"branch", p.branch}, {"tau", p.tau}});
    return {{"genus", h.genus}, {"alpha", h.num_alpha}, {"beta", h.num_beta}, {"vertices", h.num_vertices},
            {"tau_fixed_vertices", fixed}, {"z_region", h.z_region}, {"regions", regions}, {"points", pts}};
}

inline Json pages_json(const ThetaComplex& t, int sector, int width) {
    Json out = Json::array();
    for (auto& pg : spectral_pages(t, sector, 3, width)) {
        Json dims = Json::array();
        for (auto& [k, v] : pg.dims) dims.push_back({{"p", k.first}, {"grading", k.second}, {"dim", v}});
        out.push_back({{"page", pg.r == 0 ? std::string("inf") : std::to_string(pg.r)}, {"dims", dims}});
    }
    return out;
}

// towers and spectral pages of the integer-graded part of a complex
inline Json theta_json(const FloerComplex& c, int width) {
    auto part = integer_graded_part(c);
    auto t = build_theta_complex(part.complex);
    auto m = theta_homology(t);
    Json j = to_json(m);
    std::set<int> sectors;
    for (std::size_t x = 0; x < t.size(); ++x) sectors.insert(t.sector(static_cast<int>(x)));
    Json pages = Json::array();
    for (int s : sectors) pages.push_back({{"spinc", s}, {"pages", pages_json(t, s, width)}});
    j["spectral"] = pages;
    return j;
}

inline std::string rational_str(const mpq_class& q) { return q.get_str(); }

// ---------------------------------------------------------------------------------------------
// report

struct ReportResult {
    Json json;
    int exit_code = kOk;
};

inline ReportResult build_report(const BraidWord& w, const CliOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    PipelineOptions po;
    po.budget = opt.budget;
    Pipeline p = run_pipeline(w, po);
    ContactResult c = contact_class(p);
    const auto t1 = std::chrono::steady_clock::now();

    Json j;
    j["schema"] = kSchemaVersion;
    j["braid"] = {{"word", w.str()}, {"strands", w.strands}, {"drawn", p.word.str()}, {"base", p.base}, {"rotation", p.rotation}};
    j["classical"] = to_json(p.classical);
    j["diagram"] = {{"genus", p.cover.genus}, {"generators", p.floer.gens.tuples.size()},
                    {"regions", p.cover.num_regions}, {"nicify_moves", p.nicify_moves}};
    j["admissibility"] = {{"admissible", p.admissibility.admissible}, {"certificate", p.admissibility.certificate}};
    Json ranks = Json::array();
    int total = 0;
    for (auto& [k, v] : homology_ranks(p.floer.complex)) {
        ranks.push_back({{"spinc", k.first}, {"grading", k.second}, {"rank", v}});
        total += v;
    }
    j["hf_ranks"] = ranks;
    j["total_rank"] = total;
    j["theta_module"] = to_json(c.module);
    Json prof = nullptr;
    if (c.graded)
        prof = {{"nonzero", c.profile.nonzero}, {"divisibility", c.profile.divisibility},
                {"theta_torsion", c.profile.theta_torsion},
                {"delta", c.profile.delta ? Json(*c.profile.delta) : Json(nullptr)},
                {"spinc", c.profile.sector}};
    j["c_profile"] = prof;
    j["forget_c"] = c.forget;
    j["predictions"] = {{"d3", rational_str(c.d3.d3)},
                        {"delta", c.graded && c.profile.delta ? Json(*c.profile.delta) : Json(nullptr)},
                        {"v_tau", c.v_tau ? Json(*c.v_tau) : Json(nullptr)},
                        {"verdict", verdict_name(c.verdict)}};
    j["warnings"] = c.warnings;
    j["violations"] = c.violations;
    if (opt.timing) j["timing"] = {{"seconds", std::chrono::duration<double>(t1 - t0).count()}};
    return {j, c.violations.empty() ? kOk : kViolation};
}

inline void print_summary(std::ostream& os, const Json& j) {
    os << "braid        " << j["braid"]["word"].get<std::string>() << " (" << j["braid"]["strands"] << " strands)\n";
    os << "sl / sigma   " << j["classical"]["self_linking"] << " / " << j["classical"]["sigma"]
       << "   det " << j["classical"]["determinant"] << "\n";
    os << "diagram      genus " << j["diagram"]["genus"] << ", " << j["diagram"]["generators"] << " generators, "
       << j["diagram"]["regions"] << " regions\n";
    os << "admissible   " << (j["admissibility"]["admissible"].get<bool>() ? "yes" : "no") << "\n";
    os << "rank HF^     " << j["total_rank"] << "\n";
    os << "towers       " << j["theta_module"]["localized_rank"] << " free, " << j["theta_module"]["torsion"].size()
       << " torsion\n";
    if (!j["c_profile"].is_null())
        os << "c_Z2         divisibility " << j["c_profile"]["divisibility"] << ", delta " << j["c_profile"]["delta"] << "\n";
    os << "c != 0       " << (j["forget_c"].get<bool>() ? "yes" : "no") << "\n";
    os << "d3           " << j["predictions"]["d3"].get<std::string>() << "\n";
    os << "verdict      " << j["predictions"]["verdict"].get<std::string>() << "\n";
    for (auto& w : j["warnings"]) os << "warning: " << w.get<std::string>() << "\n";
    for (auto& v : j["violations"]) os << "VIOLATION: " << v.get<std::string>() << "\n";
}

inline BraidWord read_braid(const std::string& text, int strands) {
    auto w = parse_braid(text, strands);
    check_word(w);
    return w;
}

inline int cmd_report(const std::string& text, const CliOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        auto r = build_report(read_braid(text, opt.strands), opt);
        if (opt.json) out << r.json.dump(2) << "\n";
        else print_summary(out, r.json);
        return r.exit_code;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::logic_error& e) {
        err << "internal inconsistency: " << e.what() << "\n";
        return kViolation;
    }
}

// ---------------------------------------------------------------------------------------------
// dump

inline Json dump_stage(const std::string& stage, const BraidWord& w, const CliOptions& opt) {
    if (stage == "arcs") return arcs_json(apply_braid(w, standard_half_arc_basis(w.strands, 1)));
    if (stage != "bridge" && stage != "cover" && stage != "complex" && stage != "theta")
        throw InputError("unknown stage: " + stage);
    PipelineOptions po;
    po.budget = opt.budget;
    Pipeline p = run_pipeline(w, po);
    if (stage == "bridge") return bridge_json(*p.bridge);
    if (stage == "cover") return cover_json(p.cover);
    if (stage == "complex") return to_json(p.floer.complex);
    return theta_json(p.floer.complex, opt.theta_width);
}

inline int cmd_dump(const std::string& stage, const std::string& text, const CliOptions& opt, std::ostream& out,
                    std::ostream& err) {
    try {
        if (stage == "theta" && !opt.complex_file.empty()) {
            std::ifstream in(opt.complex_file);
            if (!in) throw InputError("cannot open " + opt.complex_file);
            Json j;
            try {
                j = Json::parse(in);
            } catch (const nlohmann::json::exception& e) {
                throw InputError(e.what());
            }
            out << theta_json(complex_from_json(j), opt.theta_width).dump(2) << "\n";
            return kOk;
        }
        out << dump_stage(stage, read_braid(text, opt.strands), opt).dump(2) << "\n";
        return kOk;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::logic_error& e) {
        err << "internal inconsistency: " << e.what() << "\n";
        return kViolation;
    }
}

// ---------------------------------------------------------------------------------------------
// verify

struct SuiteResult {
    int passed = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

inline BraidWord random_word(std::mt19937& rng, int max_strands, int max_len) {
    const int n = 1 + static_cast<int>(rng() % max_strands);
    BraidWord w{n, {}};
    if (n > 1)
        for (int i = static_cast<int>(rng() % (max_len + 1)); i > 0; --i)
            w.letters.push_back({1 + static_cast<int>(rng() % (n - 1)), rng() % 2 ? 1 : -1});
    return w;
}

// complex-level properties of one braid
inline std::vector<std::string> fuzz_check(const BraidWord& w, int budget) {
    std::vector<std::string> bad;
    PipelineOptions po;
    po.budget = budget;
    Pipeline p = run_pipeline(w, po);
    auto chk = check_complex(p.floer.complex);
    if (!chk.d_squared_zero) bad.push_back("d^2 != 0");
    if (!chk.tau_involution) bad.push_back("tau not an involution");
    if (!chk.tau_chain_map) bad.push_back("tau d != d tau");
    if (!chk.grading_drop) bad.push_back("d does not drop grading by one");
    if (!chk.tau_grading) bad.push_back("tau changes grading");
    if (!p.admissibility.admissible) bad.push_back("diagram not weakly admissible");
    if (!is_nice(p.cover).nice) bad.push_back("diagram not nice");
    const int rk = total_rank(p.floer.complex);
    const auto det = p.classical.determinant;
    if (det > 0 && (rk < det || (rk - det) % 2)) bad.push_back("rank incompatible with determinant");
    auto c = contact_class(p);
    if (!theta_d_squared_zero(c.theta)) bad.push_back("equivariant D^2 != 0");
    for (auto& v : c.violations) bad.push_back(v);
    return bad;
}

inline SuiteResult verify_fuzz(unsigned seed, int size, int budget) {
    SuiteResult r;
    std::mt19937 rng(seed);
    for (int i = 0; i < size; ++i) {
        auto w = random_word(rng, 3, 8);
        try {
            auto bad = fuzz_check(w, budget);
            if (bad.empty()) ++r.passed;
            for (auto& b : bad) r.failures.push_back("[" + w.str() + "] " + b);
        } catch (const std::exception& e) {
            r.failures.push_back("[" + w.str() + "] " + e.what());
        }
    }
    return r;
}

inline ThetaComplex synthetic_swap() {
    FloerComplex c;
    c.gens = {{0, 0, 1}, {0, 0, 0}};
    c.d = {{}, {}};
    return build_theta_complex(c);
}

inline ThetaComplex synthetic_identity(int n) {
    FloerComplex c;
    for (int i = 0; i < n; ++i) {
        c.gens.push_back({0, 0, i});
        c.d.push_back({});
    }
    return build_theta_complex(c);
}

inline SuiteResult verify_towers() {
    SuiteResult r;
    auto expect = [&](bool cond, const std::string& what) {
        if (cond) ++r.passed;
        else r.failures.push_back(what);
    };
    auto sw = synthetic_swap();
    auto msw = theta_homology(sw);
    expect(theta_d_squared_zero(sw), "swap: D^2 = 0");
    expect(msw.free.empty() && msw.torsion.size() == 1 && msw.torsion[0].bottom == 0 && msw.torsion[0].length == 1,
           "swap: one torsion tower of length one at 0");
    expect(spectral_dim(sw, 0, 0, 0, 1) == 2 && spectral_dim(sw, 0, 1, 1, 1) == 2, "swap: E1 = H (x) F2[theta]");
    expect(spectral_dim(sw, 0, 1, 1, 2) == 0, "swap: d1 kills the tower above degree 0");
    auto id1 = theta_homology(synthetic_identity(1));
    expect(id1.free.size() == 1 && id1.torsion.empty(), "identity: one free tower");
    auto id2 = theta_homology(synthetic_identity(2));
    expect(id2.localized_rank() == 2 && id2.torsion.empty(), "identity rank two: two free towers");
    ThetaModule m{{{0, 0}}, {{0, 2, 1}}};
    expect(v_tau(m, 0) == 2, "v_tau: free at 0, torsion at 2");
    return r;
}

inline SuiteResult verify_theorems(int budget) {
    SuiteResult r;
    auto expect = [&](bool cond, const std::string& what) {
        if (cond) ++r.passed;
        else r.failures.push_back(what);
    };
    PipelineOptions po;
    po.budget = budget;
    struct Case {
        std::string name, word;
        int n, div, delta;
        bool forget;
        Verdict v;
    };
    const std::vector<Case> cases = {
        {"U", "", 1, 0, 0, true, Verdict::NonvanishingCertified},
        {"P", "1", 2, 0, 0, true, Verdict::NonvanishingCertified},
        {"N", "-1", 2, 1, 1, false, Verdict::VanishingCertified},
        {"3_1", "1 1 1", 2, 0, 0, true, Verdict::NonvanishingCertified},
        {"m3_1", "-1 -1 -1", 2, 1, 1, false, Verdict::VanishingCertified},
        {"4_1", "1 -2 1 -2", 3, 1, 1, false, Verdict::VanishingCertified},
    };
    for (auto& cs : cases) {
        try {
            const auto w = parse_braid(cs.word, cs.n);
            auto c = contact_class(run_pipeline(w, po));
            expect(c.violations.empty(), cs.name + ": no violations");
            expect(c.profile.divisibility == cs.div && c.profile.delta == cs.delta, cs.name + ": profile");
            expect(c.forget == cs.forget, cs.name + ": forget_c");
            expect(c.verdict == cs.v, cs.name + ": verdict");
            auto neg = contact_class(run_pipeline(stabilize(w, -1), po));
            expect(neg.profile.divisibility == c.profile.divisibility + 1 && neg.profile.delta == *c.profile.delta + 1 &&
                       neg.d3.d3 == c.d3.d3 + 1,
                   cs.name + ": negative stabilization multiplies by theta");
            auto pos = contact_class(run_pipeline(stabilize(w, +1), po));
            expect(invariant(pos.profile) == invariant(c.profile) && module_signature(pos.module) == module_signature(c.module), cs.name + ": positive stabilization invariance");
        } catch (const std::exception& e) {
            r.failures.push_back(cs.name + ": " + e.what());
        }
    }
    return r;
}

inline int cmd_verify(const std::string& suite, const CliOptions& opt, std::ostream& out, std::ostream& err) {
    SuiteResult r;
    if (suite == "fuzz") r = verify_fuzz(opt.seed, opt.size, opt.budget);
    else if (suite == "towers") r = verify_towers();
    else if (suite == "theorems") r = verify_theorems(opt.budget);
    else {
        err << "input error: unknown suite " << suite << "\n";
        return kInputError;
    }
    if (opt.json) {
        out << Json{{"schema", kSchemaVersion}, {"suite", suite}, {"passed", r.passed}, {"failures", r.failures}}.dump(2) << "\n";
    } else {
        out << suite << ": " << r.passed << " passed, " << r.failures.size() << " failed\n";
        for (auto& f : r.failures) out << "  FAIL " << f << "\n";
    }
    return r.ok() ? kOk : kViolation;
}

}  // namespace bdc
