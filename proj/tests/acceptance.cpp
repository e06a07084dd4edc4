#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bdc/cli.hpp"

#include <chrono>
#include <fstream>
#include <random>

using namespace bdc;

namespace {

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); }
};

struct Knot {
    std::string word;
    int strands;
    int det;
};

const std::vector<Knot> kDetCases = {{"", 1, 1}, {"1", 2, 1}, {"1 1 1", 2, 3}, {"-1 -1 -1", 2, 3}, {"1 -2 1 -2", 3, 5}};

ContactResult contact(const std::string& s, int n) { return contact_class(run_pipeline(parse_braid(s, n))); }

std::vector<BraidWord> fuzz_words() {
    std::mt19937 rng(2024);
    std::vector<BraidWord> ws;
    for (int i = 0; i < 200; ++i) ws.push_back(random_word(rng, 3, 8));
    return ws;
}

// dim of F_p H at total grading gamma, from cocycles of filtration >= p modulo coboundaries
int filtered_dim(const ThetaComplex& t, int sector, int gamma, int p) {
    using namespace detail;
    auto vs = graded_space(t, gamma, sector), vt = graded_space(t, gamma + 1, sector), vp = graded_space(t, gamma - 1, sector);
    std::vector<std::size_t> dom;
    for (std::size_t i = 0; i < vs.basis.size(); ++i)
        if (vs.basis[i].second >= p) dom.push_back(i);
    auto imgs = d_images(t, vs, vt);
    std::vector<Bits> sub;
    for (auto i : dom) sub.push_back(imgs[i]);
    std::vector<Bits> cyc;
    for (auto& k : kernel_basis(sub, vt.basis.size())) {
        Bits c(vs.basis.size());
        for (auto j = k.find_first(); j != Bits::npos; j = k.find_next(j)) c.set(dom[j]);
        cyc.push_back(c);
    }
    auto bnd = d_images(t, vp, vs);
    auto both = bnd;
    both.insert(both.end(), cyc.begin(), cyc.end());
    return static_cast<int>(f2_rank(both) - f2_rank(bnd));
}

// the subset of JSON Schema used by the report schema: type, const, enum, required, properties, items
bool type_ok(const Json& v, const std::string& t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "integer") return v.is_number_integer();
    if (t == "number") return v.is_number();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    return false;
}

void conforms(const Json& v, const Json& schema, const std::string& path, std::vector<std::string>& errs) {
    if (schema.contains("type")) {
        bool ok = false;
        if (schema["type"].is_array()) {
            for (auto& t : schema["type"]) ok |= type_ok(v, t.get<std::string>());
        } else {
            ok = type_ok(v, schema["type"].get<std::string>());
        }
        if (!ok) {
            errs.push_back(path + ": wrong type");
            return;
        }
    }
    if (schema.contains("const") && v != schema["const"]) errs.push_back(path + ": const");
    if (schema.contains("enum") && std::find(schema["enum"].begin(), schema["enum"].end(), v) == schema["enum"].end())
        errs.push_back(path + ": enum");
    if (v.is_object()) {
        if (schema.contains("required"))
            for (auto& k : schema["required"])
                if (!v.contains(k.get<std::string>())) errs.push_back(path + ": missing " + k.get<std::string>());
        if (schema.contains("properties"))
            for (auto& [k, sub] : schema["properties"].items())
                if (v.contains(k)) conforms(v[k], sub, path + "/" + k, errs);
    }
    if (v.is_array() && schema.contains("items"))
        for (std::size_t i = 0; i < v.size(); ++i) conforms(v[i], schema["items"], path + "/" + std::to_string(i), errs);
}

}  // namespace

TEST_CASE("1: fuzzed braids give involutive complexes") {
    Stopwatch sw;
    int done = 0;
    for (auto& w : fuzz_words()) {
        CAPTURE(w.str());
        CAPTURE(w.strands);
        auto p = run_pipeline(w);
        auto chk = check_complex(p.floer.complex);
        CHECK(chk.d_squared_zero);
        CHECK(chk.tau_involution);
        CHECK(chk.tau_chain_map);
        CHECK(chk.grading_drop);
        ++done;
    }
    CHECK(done == 200);
    MESSAGE("fuzz seconds: " << sw.seconds());
    CHECK(sw.seconds() < 300);
}

TEST_CASE("2: weak admissibility decision") {
    Stopwatch sw;
    for (auto& w : fuzz_words()) {
        CAPTURE(w.str());
        auto p = run_pipeline(w);
        CHECK(p.admissibility.admissible);
    }
    HeegaardDiagram torus;
    torus.genus = 1;
    torus.num_alpha = torus.num_beta = 1;
    torus.num_regions = 2;
    torus.region_chi = {0, 0};
    torus.region_corners = {0, 0};
    torus.region_tau = {0, 1};
    torus.z_region = 1;
    torus.points_on_alpha = {{}};
    torus.alpha_segments = {{0, 0, 1, -1, -1}};
    auto res = weak_admissibility(torus);
    CHECK_FALSE(res.admissible);
    CHECK(res.certificate == Domain{1, 0});
    CHECK(sw.seconds() < 60);
}

TEST_CASE("3: rank of HF-hat equals the determinant") {
    Stopwatch sw;
    for (auto& k : kDetCases) {
        CAPTURE(k.word);
        auto p = run_pipeline(parse_braid(k.word, k.strands));
        CHECK(p.classical.determinant == k.det);
        CHECK(total_rank(p.floer.complex) == k.det);
    }
    CHECK(sw.seconds() < 120);
}

TEST_CASE("4: localization has rank one and carries the contact class") {
    Stopwatch sw;
    for (auto& k : kDetCases) {
        CAPTURE(k.word);
        auto c = contact(k.word, k.strands);
        CHECK(c.module.localized_rank() == 1);
        CHECK(c.profile.nonzero);
        CHECK_FALSE(c.profile.theta_torsion);
        CHECK(c.violations.empty());
    }
    CHECK(sw.seconds() < 60);
}

TEST_CASE("5: trivial braid and its stabilizations") {
    Stopwatch sw;
    auto u = contact("", 1), p = contact("1", 2), n = contact("-1", 2);
    CHECK(u.profile.delta == 0);
    CHECK(u.profile.divisibility == 0);
    CHECK(p.profile.delta == 0);
    CHECK(p.profile.divisibility == 0);
    CHECK(n.profile.delta == 1);
    CHECK(n.profile.divisibility == 1);
    CHECK(u.forget);
    CHECK(p.forget);
    CHECK_FALSE(n.forget);
    CHECK(sw.seconds() < 10);
}

TEST_CASE("6: negative stabilization chain") {
    Stopwatch sw;
    const std::vector<std::vector<std::pair<std::string, int>>> chains = {
        {{"", 1}, {"-1", 2}, {"-1 -2", 3}}, {{"1 1 1", 2}, {"1 1 1 -2", 3}}};
    for (auto& chain : chains)
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
            CAPTURE(chain[i + 1].first);
            auto a = contact(chain[i].first, chain[i].second);
            auto b = contact(chain[i + 1].first, chain[i + 1].second);
            CHECK(b.profile.divisibility == a.profile.divisibility + 1);
            CHECK(*b.profile.delta == *a.profile.delta + 1);
            CHECK(b.d3.d3 == a.d3.d3 + 1);
        }
    CHECK(sw.seconds() < 60);
}

TEST_CASE("7: profiles are invariant under conjugation, positive stabilization and half-arc slides") {
    Stopwatch sw;
    std::mt19937 rng(3);
    const std::vector<std::pair<std::string, int>> bases = {{"", 1},         {"1", 2},         {"-1", 2},
                                                            {"1 1 1", 2},    {"-1 -1 -1", 2},  {"1 -2 1 -2", 3}};
    int slides = 0;
    for (auto& [s, n] : bases) {
        const auto w = parse_braid(s, n);
        const auto c0 = contact_class(run_pipeline(w));
        for (int i = 0; i < 20; ++i) {
            BraidWord v = w;
            std::string what;
            const int kind = i % 3;
            if (kind == 0 && n > 1) {
                BraidWord g{n, {}};
                for (int k = 1 + static_cast<int>(rng() % 2); k > 0; --k)
                    g.letters.push_back({1 + static_cast<int>(rng() % (n - 1)), rng() % 2 ? 1 : -1});
                v = conjugate(w, g);
                what = "conjugate by " + g.str();
            } else if (kind == 1 || kind == 0) {
                v = stabilize(w, +1);
                what = "stabilize";
            } else {
                while (v.strands < 3) v = stabilize(v, +1);
                what = "stabilize, slide";
            }
            ArcSystem sys = standard_half_arc_basis(v.strands, 1);
            if (kind == 2)
                for (int k = 0; k < 3; ++k) {
                    const int a = 2 + static_cast<int>(rng() % (v.strands - 1));
                    const int b = 2 + static_cast<int>(rng() % (v.strands - 1));
                    if (a == b || std::abs(sys.position(a) - sys.position(b)) != 1) continue;
                    sys = half_arc_slide(sys, a, b);
                    what += " " + std::to_string(a) + "/" + std::to_string(b);
                    ++slides;
                }
            CAPTURE(s);
            CAPTURE(v.str());
            CAPTURE(what);
            auto c = contact_class(run_pipeline(sys, v));
            CHECK(invariant(c.profile) == invariant(c0.profile));
            CHECK(module_signature(c.module) == module_signature(c0.module));
            CHECK(c.forget == c0.forget);
        }
    }
    CHECK(slides > 10);
    CHECK(sw.seconds() < 180);
}

TEST_CASE("8: quasi-alternating criterion on trefoils") {
    Stopwatch sw;
    auto rh = contact("1 1 1", 2);
    CHECK(rh.d3.sl == 1);
    CHECK(rh.d3.sigma == 2);
    CHECK(rh.verdict == Verdict::NonvanishingCertified);
    CHECK(rh.forget);
    CHECK(rh.v_tau == 0);
    for (auto [s, n] : std::vector<std::pair<std::string, int>>{{"-1 -1 -1", 2}, {"-1 -1 -1 -2", 3}, {"-1 -1 -1 2", 3}, {"-1 -2 -1 -2 -1 -3", 4}}) {
        CAPTURE(s);
        auto c = contact(s, n);
        REQUIRE(c.d3.sl <= -5);
        CHECK(c.verdict == Verdict::VanishingCertified);
        CHECK_FALSE(c.forget);
        CHECK(c.v_tau == 0);
    }
    CHECK(sw.seconds() < 60);
}

TEST_CASE("9: spectral sequence pages") {
    Stopwatch sw;
    for (auto& k : kDetCases) {
        CAPTURE(k.word);
        auto p = run_pipeline(parse_braid(k.word, k.strands));
        auto part = integer_graded_part(p.floer.complex);
        auto t = build_theta_complex(part.complex);
        auto h = homology_ranks(part.complex);
        std::set<int> sectors;
        std::map<int, int> sector_of;  // spinc -> sector
        for (std::size_t x = 0; x < t.size(); ++x) {
            sectors.insert(t.sector(static_cast<int>(x)));
            sector_of[t.spinc[x]] = t.sector(static_cast<int>(x));
        }
        const int rinf = grading_span(t) + 3;
        for (int s : sectors) {
            const int top = grading_span(t) + 3;
            for (int g = 0; g <= top; ++g)
                for (int q = 0; q <= g; ++q) {
                    int e1 = 0;
                    for (auto& [key, v] : h)
                        if (key.second == g - q && sector_of.at(key.first) == s) e1 += v;
                    CHECK(spectral_dim(t, s, g, q, 1) == e1);
                    CHECK(spectral_dim(t, s, g, q, rinf) == filtered_dim(t, s, g, q) - filtered_dim(t, s, g, q + 1));
                }
        }
    }
    CHECK(sw.seconds() < 60);
}

TEST_CASE("10: synthetic towers") {
    Stopwatch sw;
    auto r = verify_towers();
    for (auto& f : r.failures) MESSAGE(f);
    CHECK(r.ok());
    CHECK(sw.seconds() < 1);
}

TEST_CASE("report schema and exit codes") {
    CliOptions opt;
    opt.timing = false;
    opt.json = true;
    std::ostringstream a, b, err;
    CHECK(cmd_report("1 1 1", opt, a, err) == kOk);
    CHECK(cmd_report("1 1 1", opt, b, err) == kOk);
    CHECK(a.str() == b.str());
    auto j = Json::parse(a.str());
    CHECK(j["schema"] == kSchemaVersion);
    for (auto key : {"braid", "classical", "diagram", "admissibility", "hf_ranks", "theta_module", "c_profile", "predictions"})
        CHECK(j.contains(key));
    CHECK(j["predictions"]["verdict"] == "NonvanishingCertified");
    std::ostringstream o, e;
    CHECK(cmd_report("1 x", opt, o, e) == kInputError);
    CHECK(cmd_report("4", CliOptions{2}, o, e) == kInputError);
    opt.strands = 2;
    std::ostringstream n;
    CHECK(cmd_report("-1", opt, n, e) == kOk);
    auto jn = Json::parse(n.str());
    CHECK(jn["predictions"]["delta"] == 1);
    CHECK(jn["predictions"]["verdict"] == "VanishingCertified");
}

TEST_CASE("reports conform to the frozen schema") {
    std::ifstream in(BDC_SCHEMA_FILE);
    REQUIRE(in);
    const Json schema = Json::parse(in);
    CHECK(schema["$id"] == kSchemaVersion);
    CliOptions opt;
    for (auto [s, n] : std::vector<std::pair<std::string, int>>{{"", 1}, {"-1", 2}, {"1 1 1", 2}, {"1 1", 2}, {"", 2}}) {
        CAPTURE(s);
        opt.strands = n;
        auto r = build_report(parse_braid(s, n), opt);
        std::vector<std::string> errs;
        conforms(r.json, schema, "", errs);
        for (auto& e : errs) MESSAGE(e);
        CHECK(errs.empty());
        // key order is part of the contract
        std::vector<std::string> keys;
        for (auto& [k, v] : r.json.items()) keys.push_back(k);
        std::vector<std::string> want;
        for (auto& k : schema["required"]) want.push_back(k.get<std::string>());
        want.push_back("timing");
        CHECK(keys == want);
    }
}

TEST_CASE("dumped complexes feed the tower computation") {
    CliOptions opt;
    auto c = dump_stage("complex", parse_braid("1 -2 1 -2", 3), opt);
    auto back = complex_from_json(c);
    CHECK(to_json(back) == c);
    auto p = run_pipeline(parse_braid("1 -2 1 -2", 3));
    CHECK(theta_json(back, 2) == theta_json(p.floer.complex, 2));
    auto cov = dump_stage("cover", parse_braid("1 1 1", 2), opt);
    CHECK(cov["genus"] == 1);
    CHECK(cov["tau_fixed_vertices"] == 4);
}
