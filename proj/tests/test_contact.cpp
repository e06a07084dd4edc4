#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bdc/contact.hpp"

using namespace bdc;

namespace {

ContactResult contact(const std::string& s, int n) { return contact_class(run_pipeline(parse_braid(s, n))); }

}  // namespace

TEST_CASE("d3 formula") {
    CHECK(d3(0, -1) == mpq_class(-1, 2));
    CHECK(d3(2, 1) == 0);
    mpq_class quarter_sigma(2, 4);
    quarter_sigma.canonicalize();
    CHECK(d3(2, 1) == quarter_sigma - mpq_class(1, 2));  // sigma/4 - 1/2 at sl = sigma - 1
    for (int sl = -9; sl < 4; sl += 2) CHECK(d3(0, sl - 2) == d3(0, sl) + 1);
}

TEST_CASE("predictor on synthetic profiles") {
    ClassProfile p;
    p.nonzero = true;
    p.theta_torsion = false;
    p.divisibility = 0;
    p.delta = 0;
    CHECK(vnv_predict(p, 0) == Verdict::NonvanishingCertified);
    p.delta = 1;
    p.divisibility = 1;
    CHECK(vnv_predict(p, 0) == Verdict::VanishingCertified);
    CHECK(vnv_predict(p, 2) == Verdict::Inconclusive);
    p.delta.reset();
    CHECK(vnv_predict(p, 0) == Verdict::Inconclusive);
}

TEST_CASE("trivial braid, positive and negative stabilization") {
    auto u = contact("", 1), pos = contact("1", 2), neg = contact("-1", 2);
    for (auto* r : {&u, &pos, &neg}) {
        CHECK(r->violations.empty());
        CHECK(r->profile.nonzero);
        CHECK_FALSE(r->profile.theta_torsion);
        CHECK(r->module.localized_rank() == 1);
    }
    CHECK(u.profile.divisibility == 0);
    CHECK(u.profile.delta == 0);
    CHECK(pos.profile.divisibility == 0);
    CHECK(pos.profile.delta == 0);
    CHECK(neg.profile.divisibility == 1);
    CHECK(neg.profile.delta == 1);
    CHECK(u.forget);
    CHECK(pos.forget);
    CHECK_FALSE(neg.forget);
    CHECK(u.verdict == Verdict::NonvanishingCertified);
    CHECK(neg.verdict == Verdict::VanishingCertified);
    CHECK(u.obstruction);
    CHECK_FALSE(neg.obstruction);
}

TEST_CASE("EH has no incoming differential and is tau-fixed") {
    for (auto [s, n] : std::vector<std::pair<std::string, int>>{{"1 1 1", 2}, {"-1 -2", 3}, {"1 -2 1 -2", 3}}) {
        auto p = run_pipeline(parse_braid(s, n));
        CHECK(p.floer.complex.gens[p.eh].tau == p.eh);
        for (auto& row : p.floer.complex.d)
            for (int y : row) CHECK(y != p.eh);
    }
}

TEST_CASE("trefoils") {
    auto rh = contact("1 1 1", 2);
    CHECK(rh.violations.empty());
    CHECK(rh.forget);
    CHECK(rh.verdict == Verdict::NonvanishingCertified);
    CHECK(rh.v_tau == 0);
    auto lh = contact("-1 -1 -1", 2);
    CHECK(lh.violations.empty());
    CHECK_FALSE(lh.forget);
    CHECK(lh.verdict == Verdict::VanishingCertified);
    CHECK(lh.v_tau == 0);
}

TEST_CASE("figure eight with sl = -3 vanishes") {
    auto r = contact("1 -2 1 -2", 3);
    CHECK(r.violations.empty());
    CHECK(r.profile.delta == 1);
    CHECK_FALSE(r.forget);
}

TEST_CASE("negative stabilization multiplies by theta") {
    auto a = contact("1 1 1", 2), b = contact("1 1 1 -2", 3);
    CHECK(b.profile.divisibility == a.profile.divisibility + 1);
    CHECK(*b.profile.delta == *a.profile.delta + 1);
    CHECK(b.d3.d3 == a.d3.d3 + 1);
}

TEST_CASE("links run with a warning") {
    auto r = contact("1 1", 2);
    CHECK_FALSE(r.warnings.empty());
    CHECK(r.violations.empty());
}
