#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bdc/braid.hpp"

#include <algorithm>
#include <random>

using namespace bdc;

namespace {

// permutation-expansion determinant, independent of the Bareiss code
long long brute_det(const IntMatrix& m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return 1;
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    long long total = 0;
    do {
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) inv += p[i] > p[j];
        long long prod = 1;
        for (int i = 0; i < n; ++i) prod *= m[i][p[i]];
        total += (inv % 2 ? -prod : prod);
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

BraidWord random_word(std::mt19937& rng, int n, int len) {
    BraidWord w{n, {}};
    if (n < 2) return w;
    std::uniform_int_distribution<int> idx(1, n - 1), sg(0, 1);
    for (int i = 0; i < len; ++i) w.letters.push_back({idx(rng), sg(rng) ? 1 : -1});
    return w;
}

}  // namespace

TEST_CASE("parse") {
    auto w = parse_braid("1 1 1");
    CHECK(w.strands == 2);
    CHECK(w.letters.size() == 3);
    CHECK(parse_braid("", 1).letters.empty());
    auto f8 = parse_braid("1 -2 1 -2");
    CHECK(f8.strands == 3);
    CHECK(parse_braid(f8.str(), f8.strands) == f8);
    CHECK(parse_braid("1,-2,1", 0).strands == 3);
    CHECK_THROWS_AS(parse_braid(""), InputError);
    CHECK_THROWS_AS(parse_braid("3", 3), InputError);
    CHECK_THROWS_AS(parse_braid("0"), InputError);
    CHECK_THROWS_AS(parse_braid("1 x"), InputError);
}

TEST_CASE("components and self-linking") {
    CHECK(closure_components(parse_braid("1")) == 1);
    CHECK(closure_components(parse_braid("", 2)) == 2);
    CHECK(closure_components(parse_braid("1 1 1")) == 1);
    CHECK(self_linking(parse_braid("", 1)) == -1);
    CHECK(self_linking(parse_braid("1 1 1")) == 1);
    CHECK(self_linking(parse_braid("-1")) == -3);
}

TEST_CASE("stabilization and conjugation words") {
    auto u = parse_braid("", 1);
    auto p = stabilize(u, +1);
    CHECK(p.str() == "1");
    CHECK(self_linking(p) == -1);
    auto n = stabilize(u, -1);
    CHECK(n.str() == "-1");
    CHECK(self_linking(n) == -3);
    CHECK(self_linking(stabilize(p, +1)) == -1);
    auto t = parse_braid("1 1 1");
    CHECK(conjugate(t, parse_braid("", 2)) == t);
    CHECK(conjugate(t, parse_braid("1")).str() == "1 1 1 1 -1");
    CHECK_THROWS_AS(conjugate(t, parse_braid("1 2")), InputError);
}

TEST_CASE("seifert matrix small cases") {
    auto e = seifert_matrix(parse_braid("", 1));
    CHECK(e.empty());
    auto ci = classical_invariants(parse_braid("", 1));
    CHECK(ci.sigma == 0);
    CHECK(ci.determinant == 1);

    auto v = seifert_matrix(parse_braid("1 1 1"));
    REQUIRE(v.size() == 2);
    CHECK(std::llabs(brute_det(symmetrize(v))) == 3);
    CHECK(classical_invariants(parse_braid("1 1 1")).sigma == 2);
    CHECK(classical_invariants(parse_braid("-1 -1 -1")).sigma == -2);

    auto f8 = parse_braid("1 -2 1 -2");
    CHECK(std::llabs(brute_det(symmetrize(seifert_matrix(f8)))) == 5);
    CHECK(classical_invariants(f8).sigma == 0);
    CHECK(classical_invariants(f8).determinant == 5);
    // torus knots T(2,5), T(3,4)
    CHECK(classical_invariants(parse_braid("1 1 1 1 1")).sigma == 4);
    CHECK(classical_invariants(parse_braid("1 1 1 1 1")).determinant == 5);
    CHECK(classical_invariants(parse_braid("1 2 1 2 1 2 1 2")).sigma == 6);
    CHECK(classical_invariants(parse_braid("1 2 1 2 1 2 1 2")).determinant == 3);
    // Hopf link and split unions
    CHECK(classical_invariants(parse_braid("1 1")).determinant == 2);
    CHECK(classical_invariants(parse_braid("1", 3)).determinant == 0);
}

TEST_CASE("bareiss agrees with brute force") {
    std::mt19937 rng(3);
    for (int it = 0; it < 200; ++it) {
        int n = 2 + static_cast<int>(rng() % 3);
        auto w = random_word(rng, n, 1 + static_cast<int>(rng() % 7));
        auto s = symmetrize(seifert_matrix(w));
        if (s.size() > 7) continue;
        CHECK(determinant(s).get_si() == brute_det(s));
    }
}

TEST_CASE("invariance under conjugation and stabilization") {
    std::mt19937 rng(11);
    for (int it = 0; it < 400; ++it) {
        int n = 1 + static_cast<int>(rng() % 4);
        auto w = random_word(rng, n, static_cast<int>(rng() % 11));
        auto base = classical_invariants(w);
        if (base.components == 1) {
            CHECK(base.determinant % 2 == 1);
            CHECK(base.sigma % 2 == 0);
        }
        if (n >= 2) {
            auto g = random_word(rng, n, 1 + static_cast<int>(rng() % 3));
            auto c = classical_invariants(conjugate(w, g));
            CHECK(c.self_linking == base.self_linking);
            CHECK(c.sigma == base.sigma);
            CHECK(c.determinant == base.determinant);
            CHECK(c.components == base.components);
        }
        auto p = classical_invariants(stabilize(w, +1));
        CHECK(p.self_linking == base.self_linking);
        CHECK(p.sigma == base.sigma);
        CHECK(p.determinant == base.determinant);
        auto m = classical_invariants(stabilize(w, -1));
        CHECK(m.self_linking == base.self_linking - 2);
        CHECK(m.sigma == base.sigma);
        CHECK(m.determinant == base.determinant);
    }
}
