#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bdc/arcs.hpp"

#include <random>

using namespace bdc;

namespace {

std::vector<int> reduce(std::vector<int> w) {
    std::vector<int> st;
    for (int l : w) {
        if (!st.empty() && st.back() == -l) st.pop_back();
        else st.push_back(l);
    }
    return st;
}

std::vector<int> inv(std::vector<int> w) {
    std::reverse(w.begin(), w.end());
    for (auto& l : w) l = -l;
    return w;
}

std::vector<int> cat(std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

Arc random_arc(std::mt19937& rng, int n) {
    Arc a;
    a.start = 1 + static_cast<int>(rng() % n);
    int len = static_cast<int>(rng() % 7);
    for (int i = 0; i < len; ++i) {
        int k = 1 + static_cast<int>(rng() % n);
        a.word.push_back(rng() % 2 ? k : -k);
    }
    if (rng() % 2) {
        a.end_puncture = 1 + static_cast<int>(rng() % n);
        if (a.end_puncture == a.start) a.end_puncture = a.start % n + 1;
    } else {
        a.end_gap = static_cast<int>(rng() % n);
    }
    return tighten(a);
}

BraidWord w(int n, std::vector<int> ls) {
    BraidWord b{n, {}};
    for (int l : ls) b.letters.push_back({std::abs(l), l > 0 ? 1 : -1});
    return b;
}

}  // namespace

TEST_CASE("tightening") {
    CHECK(tighten(Arc{1, {2, -2}, 0, 0}).word.empty());
    CHECK(tighten(Arc{1, {1, 2}, 0, 0}).word == std::vector<int>{2});
    CHECK(tighten(Arc{1, {3, 2, -2, 3}, 3, -1}).word.empty());
    CHECK(tighten(Arc{1, {2, 3, -3}, 3, -1}).word == std::vector<int>{2});
    CHECK(tighten(Arc{2, {1, 2, -1, 3}, 0, 0}).word == std::vector<int>{1, 2, -1, 3});
    std::mt19937 rng(1);
    for (int i = 0; i < 200; ++i) {
        auto a = random_arc(rng, 4);
        CHECK(tighten(a) == a);
    }
}

TEST_CASE("twist tables agree with each other") {
    // loop around p_m is the conjugated spoke; boundary loop splits into gap paths
    for (int n = 2; n <= 5; ++n)
        for (int k = 1; k < n; ++k)
            for (int sg : {1, -1}) {
                for (int m = 1; m <= n; ++m) {
                    std::vector<int> img;
                    detail::twist_letter(m, k, sg, img);
                    auto [mp, sw] = detail::twist_spoke(m, k, sg);
                    CHECK(reduce(img) == reduce(cat(cat(inv(sw), {mp}), sw)));
                    auto up = m == 1 ? std::vector<int>{} : detail::twist_gap_path(m - 1, k, sg);
                    auto uc = m == n ? std::vector<int>{} : detail::twist_gap_path(m, k, sg);
                    CHECK(reduce(img) == reduce(cat(cat(up, {m}), inv(uc))));
                }
            }
}

TEST_CASE("Artin action on loops") {
    // sigma_1 on F_2: x1 -> x1 x2 x1^-1, x2 -> x1
    std::vector<int> a;
    detail::twist_letter(1, 1, 1, a);
    CHECK(a == std::vector<int>{1, 2, -1});
    a.clear();
    detail::twist_letter(2, 1, 1, a);
    CHECK(a == std::vector<int>{1});
    // product x1 x2 ... xn fixed
    for (int k = 1; k <= 3; ++k)
        for (int sg : {1, -1}) {
            std::vector<int> img;
            for (int m = 1; m <= 4; ++m) detail::twist_letter(m, k, sg, img);
            CHECK(reduce(img) == std::vector<int>{1, 2, 3, 4});
        }
}

TEST_CASE("group relations on arcs") {
    std::mt19937 rng(7);
    for (int it = 0; it < 300; ++it) {
        const int n = 3 + static_cast<int>(rng() % 3);
        auto a = random_arc(rng, n);
        const int k = 1 + static_cast<int>(rng() % (n - 1));
        CHECK(apply_word(a, w(n, {k, -k})) == a);
        CHECK(apply_word(a, w(n, {-k, k})) == a);
        if (k + 1 < n) CHECK(apply_word(a, w(n, {k, k + 1, k})) == apply_word(a, w(n, {k + 1, k, k + 1})));
        if (k + 2 < n) CHECK(apply_word(a, w(n, {k, k + 2})) == apply_word(a, w(n, {k + 2, k})));
        // composition in reading order
        auto x = w(n, {k, -1, 2});
        auto y = w(n, {1, 1, -k});
        CHECK(apply_word(apply_word(a, x), y) == apply_word(a, concat(x, y)));
    }
}

TEST_CASE("half twist reverses the arc it swaps") {
    for (int n = 2; n <= 5; ++n)
        for (int k = 1; k < n; ++k) {
            Arc c{k, {}, k + 1, -1};
            CHECK(apply_letter(c, {k, 1}) == reversed(c));
            CHECK(apply_letter(c, {k, -1}) == reversed(c));
        }
}

TEST_CASE("full twists make arcs longer") {
    Arc b = standard_b_arc(2, 2);
    std::size_t prev = 0;
    for (int p = 1; p <= 5; ++p) {
        auto img = apply_word(b, w(2, std::vector<int>(2 * p, 1)));
        CHECK(img.length() > prev);
        prev = img.length();
    }
    CHECK(apply_letter(b, {1, 1}) == Arc{1, {}, 0, 0});
}

TEST_CASE("standard basis and slides") {
    auto s = standard_half_arc_basis(4);
    CHECK(s.arc_punctures == std::vector<int>{2, 3, 4});
    CHECK(arc_system_violations(s).empty());
    for (std::size_t t = 0; t < 3; ++t) CHECK(s.b_arcs[t] == standard_b_arc(4, s.arc_punctures[t]));

    CHECK_THROWS_AS(half_arc_slide(s, 2, 4), InputError);  // not adjacent
    CHECK_THROWS_AS(half_arc_slide(s, 2, 1), InputError);  // base
    CHECK_THROWS_AS(half_arc_slide(s, 3, 3), InputError);

    auto s1 = half_arc_slide(s, 2, 3);
    CHECK(arc_system_violations(s1).empty());
    CHECK(s1.position(2) == 3);
    CHECK(s1.position(3) == 2);
    auto back = half_arc_slide(s1, 2, 3);
    CHECK(back.a_arcs == s.a_arcs);
    CHECK(back.b_arcs == s.b_arcs);
    CHECK(back.frame.letters.size() == 2);

    // slid arcs stay attached to their punctures
    std::mt19937 rng(3);
    auto cur = apply_braid(w(4, {1, -2, 3, 3}), s);
    for (int it = 0; it < 30; ++it) {
        int i = 2 + static_cast<int>(rng() % 3), j = 2 + static_cast<int>(rng() % 3);
        if (i == j || std::abs(cur.position(i) - cur.position(j)) != 1) continue;
        cur = half_arc_slide(cur, i, j);
        CHECK(arc_system_violations(cur).empty());
        auto sf = standard_form(cur);
        CHECK(sf.monodromy.permutation().size() == 4u);
        CHECK(closure_components(sf.monodromy) == closure_components(w(4, {1, -2, 3, 3})));
    }
}

TEST_CASE("ray order is a total order compatible with nesting") {
    std::mt19937 rng(11);
    for (int it = 0; it < 100; ++it) {
        const int n = 2 + static_cast<int>(rng() % 3);
        BraidWord b{n, {}};
        for (int i = 0; i < 6; ++i) b.letters.push_back({1 + static_cast<int>(rng() % (n - 1)), rng() % 2 ? 1 : -1});
        std::vector<Arc> arcs;
        for (int k = 2; k <= n; ++k) arcs.push_back(apply_word(standard_b_arc(n, k), b));
        RayOrder ro(n, arcs);
        for (int k = 1; k <= n; ++k) {
            auto& r = ro.ray(k);
            int cnt = 0;
            for (auto& a : arcs) cnt += a.crossings_with(k);
            CHECK(static_cast<int>(r.size()) == cnt);
            // consecutive crossings of one arc that pass straight through stay adjacent in order
        }
    }
}
