#pragma once
// Arcs in the n-punctured disk, encoded by their crossing sequence with the cut system of
// vertical rays l_1..l_n hanging from the punctures down to the boundary.  Punctures sit on a
// horizontal diameter; letter +k means "cross l_k from left to right", -k the opposite.
// The complement of the rays is a disk, so a freely reduced sequence (with end spins removed)
// is a tight representative of the homotopy class rel endpoints.

#include "bdc/braid.hpp"

#include <functional>
#include <map>
#include <set>

namespace bdc {

struct Arc {
    int start = 1;             // puncture index
    std::vector<int> word;     // crossing letters
    int end_puncture = 0;      // > 0: ends at that puncture
    int end_gap = -1;          // otherwise: boundary gap, 1..n-1 between rays, 0 = outer gap
    bool operator==(const Arc&) const = default;

    int crossings_with(int k) const {
        int c = 0;
        for (int l : word) c += (std::abs(l) == k);
        return c;
    }
    std::size_t length() const { return word.size(); }
};

inline Arc reversed(const Arc& a) {
    if (a.end_puncture <= 0) throw std::logic_error("only puncture-to-puncture arcs reverse");
    Arc r;
    r.start = a.end_puncture;
    r.end_puncture = a.start;
    for (auto it = a.word.rbegin(); it != a.word.rend(); ++it) r.word.push_back(-*it);
    return r;
}

// free reduction plus spinning off letters of the rays at puncture endpoints
inline Arc tighten(Arc a) {
    std::vector<int> st;
    for (int l : a.word) {
        if (!st.empty() && st.back() == -l) st.pop_back();
        else st.push_back(l);
    }
    bool changed = true;
    std::size_t lo = 0, hi = st.size();
    while (changed) {
        changed = false;
        if (lo < hi && std::abs(st[lo]) == a.start) { ++lo; changed = true; }
        if (a.end_puncture > 0 && lo < hi && std::abs(st[hi - 1]) == a.end_puncture) { --hi; changed = true; }
        // removing an end letter can expose a cancelling pair across the cut
        if (changed) {
            std::vector<int> rest(st.begin() + static_cast<long>(lo), st.begin() + static_cast<long>(hi));
            st.clear();
            for (int l : rest) {
                if (!st.empty() && st.back() == -l) st.pop_back();
                else st.push_back(l);
            }
            lo = 0;
            hi = st.size();
        }
    }
    a.word.assign(st.begin() + static_cast<long>(lo), st.begin() + static_cast<long>(hi));
    return a;
}

inline bool is_tight(const Arc& a) { return tighten(a) == a; }

namespace detail {

// image of one loop letter under the half twist T_k^sign
inline void twist_letter(int l, int k, int sign, std::vector<int>& out) {
    const int j = std::abs(l), s = l > 0 ? 1 : -1;
    std::vector<int> img;
    if (j != k && j != k + 1) {
        out.push_back(l);
        return;
    }
    if (sign > 0) {
        if (j == k) img = {k, k + 1, -k};
        else img = {k};
    } else {
        if (j == k) img = {k + 1};
        else img = {-(k + 1), k, k + 1};
    }
    if (s > 0) {
        out.insert(out.end(), img.begin(), img.end());
    } else {
        for (auto it = img.rbegin(); it != img.rend(); ++it) out.push_back(-*it);
    }
}

// image of the spoke from puncture m to the base point (top of the disk): new puncture + letters
inline std::pair<int, std::vector<int>> twist_spoke(int m, int k, int sign) {
    if (m != k && m != k + 1) return {m, {}};
    if (sign > 0) {
        if (m == k) return {k + 1, {-k}};
        return {k, {}};
    }
    if (m == k) return {k + 1, {}};
    return {k, {k + 1}};
}

// letters prepended to the path from the base point to a point of boundary gap g
inline std::vector<int> twist_gap_path(int g, int k, int sign) {
    if (g != k) return {};
    if (sign > 0) return {k, -(k + 1)};
    return {-(k + 1), k};
}

}  // namespace detail

inline Arc apply_letter(const Arc& a, Letter lt) {
    const int k = lt.index, sg = lt.sign;
    Arc r;
    auto [s, pre] = detail::twist_spoke(a.start, k, sg);
    r.start = s;
    r.word = pre;
    for (int l : a.word) detail::twist_letter(l, k, sg, r.word);
    if (a.end_puncture > 0) {
        auto [e, post] = detail::twist_spoke(a.end_puncture, k, sg);
        r.end_puncture = e;
        for (auto it = post.rbegin(); it != post.rend(); ++it) r.word.push_back(-*it);
    } else {
        r.end_gap = a.end_gap;
        auto post = detail::twist_gap_path(a.end_gap, k, sg);
        r.word.insert(r.word.end(), post.begin(), post.end());
    }
    return tighten(r);
}

// letters act in reading order: apply(w1 w2) = apply(w2) after apply(w1)
inline Arc apply_word(const Arc& a, const BraidWord& w) {
    Arc r = a;
    for (auto l : w.letters) r = apply_letter(r, l);
    return r;
}

// standard b-arc at puncture i: leaves p_i just to the right of its ray
inline Arc standard_b_arc(int n, int i) { return Arc{i, {}, 0, i == n ? 0 : i}; }
// standard a-arc at puncture i, drawn as a parallel copy on the left of the ray l_i
inline Arc standard_a_arc(int n, int i) {
    (void)n;
    return Arc{i, {}, 0, i == 1 ? 0 : i - 1};
}

struct ArcSystem {
    int n = 1;
    int base = 1;
    BraidWord frame;            // the basis is frame(standard basis)
    std::vector<int> arc_punctures;  // punctures carrying arcs (all but base)
    std::vector<Arc> a_arcs, b_arcs, image_arcs;
    BraidWord monodromy;        // applied braid, empty until apply_braid

    // position of the standard ray that the frame carries to the arc at puncture k
    int position(int k) const {
        auto perm = frame.permutation();  // perm[q-1] = where strand at q ends up
        for (int q = 1; q <= n; ++q)
            if (perm[q - 1] + 1 == k) return q;
        throw std::logic_error("bad frame");
    }
};

inline void refresh_arcs(ArcSystem& s) {
    s.a_arcs.clear();
    s.b_arcs.clear();
    s.image_arcs.clear();
    s.arc_punctures.clear();
    for (int k = 1; k <= s.n; ++k)
        if (k != s.base) s.arc_punctures.push_back(k);
    for (int k : s.arc_punctures) {
        const int q = s.position(k);
        Arc a = apply_word(standard_a_arc(s.n, q), s.frame);
        Arc b = apply_word(standard_b_arc(s.n, q), s.frame);
        s.a_arcs.push_back(a);
        s.b_arcs.push_back(b);
        s.image_arcs.push_back(apply_word(b, s.monodromy));
    }
}

inline ArcSystem standard_half_arc_basis(int n, int base = 1) {
    if (n < 1) throw InputError("need at least one puncture");
    if (base < 1 || base > n) throw InputError("base puncture out of range");
    ArcSystem s;
    s.n = n;
    s.base = base;
    s.frame = BraidWord{n, {}};
    s.monodromy = BraidWord{n, {}};
    refresh_arcs(s);
    return s;
}

inline ArcSystem apply_braid(const BraidWord& w, const ArcSystem& s) {
    if (w.strands != s.n) throw InputError("strand count does not match puncture count");
    ArcSystem r = s;
    r.monodromy = concat(s.monodromy, w);
    refresh_arcs(r);
    return r;
}

// Half-arc slide of a_i along a_j: valid when their rays are adjacent in the frame
// (the region swept then contains exactly p_j).  Realised as a change of frame.
inline ArcSystem half_arc_slide(const ArcSystem& s, int i, int j) {
    if (i == j || i == s.base || j == s.base || i < 1 || j < 1 || i > s.n || j > s.n)
        throw InputError("slide needs two distinct non-base arcs");
    const int qi = s.position(i), qj = s.position(j);
    if (std::abs(qi - qj) != 1) throw InputError("slide region would contain more than one puncture");
    ArcSystem r = s;
    Letter l = qj == qi + 1 ? Letter{qi, -1} : Letter{qj, +1};
    r.frame.letters.insert(r.frame.letters.begin(), l);
    refresh_arcs(r);
    return r;
}

// The same data expressed in the frame where a-arcs are the rays: base puncture and monodromy.
struct StandardForm {
    int n, base;
    BraidWord monodromy;
};

inline StandardForm standard_form(const ArcSystem& s) {
    return {s.n, s.position(s.base), concat(concat(s.frame, s.monodromy), s.frame.inverse())};
}

// Basis property check: complement of the a-arcs connected, arcs disjoint.  In this encoding
// every frame image of the standard rays qualifies; we verify the recorded arcs really are
// the frame images and are tight.
inline std::vector<std::string> arc_system_violations(const ArcSystem& s) {
    std::vector<std::string> v;
    for (std::size_t t = 0; t < s.a_arcs.size(); ++t) {
        if (!is_tight(s.a_arcs[t])) v.push_back("a-arc not tight");
        if (!is_tight(s.b_arcs[t])) v.push_back("b-arc not tight");
        if (!is_tight(s.image_arcs[t])) v.push_back("image arc not tight");
        if (s.a_arcs[t].start != s.arc_punctures[t] || s.b_arcs[t].start != s.arc_punctures[t])
            v.push_back("arc not attached to its puncture");
    }
    std::set<int> starts;
    for (auto& a : s.image_arcs) starts.insert(a.start);
    if (starts.size() != s.image_arcs.size()) v.push_back("image arcs share a puncture");
    return v;
}

// ---------------------------------------------------------------------------------------------
// Embedding: ordering of crossing points along each ray for a family of disjoint arcs that all
// start at punctures and end at distinct boundary gaps.

class RayOrder {
public:
    RayOrder(int n, const std::vector<Arc>& arcs) : n_(n), arcs_(arcs) {
        for (auto& a : arcs_)
            if (a.end_puncture > 0) throw std::logic_error("ray ordering expects arcs ending on the boundary");
        order_.assign(n + 1, {});
        for (int t = 0; t < static_cast<int>(arcs_.size()); ++t)
            for (int i = 0; i < static_cast<int>(arcs_[t].word.size()); ++i)
                order_[std::abs(arcs_[t].word[i])].push_back({t, i});
        for (int k = 1; k <= n; ++k)
            std::sort(order_[k].begin(), order_[k].end(),
                      [&](auto x, auto y) { return below(x, y); });
    }
    // crossings on ray k sorted from the boundary upward: (arc, letter index)
    const std::vector<std::pair<int, int>>& ray(int k) const { return order_[k]; }

    // cyclic slots along the boundary of the cut-open disk
    static int left_slot(int k) { return 5 * (k - 1); }
    static int corner_slot(int k) { return 5 * (k - 1) + 1; }
    static int right_slot(int k) { return 5 * (k - 1) + 2; }
    int gap_slot(int g) const { return g == 0 ? 5 * (n_ - 1) + 4 : 5 * (g - 1) + 4; }

private:
    struct Walker {
        int arc, ev, dir;  // event index: 0 = start corner, 1..L crossings, L+1 end
    };
    int arrival_slot(const Walker& w, int ev) const {
        const Arc& a = arcs_[w.arc];
        const int L = static_cast<int>(a.word.size());
        if (ev == 0) return corner_slot(a.start);
        if (ev == L + 1) return gap_slot(a.end_gap);
        const int l = a.word[ev - 1];
        const bool leftward_entry = (l > 0) == (w.dir > 0);  // arrives on the left side
        return leftward_entry ? left_slot(std::abs(l)) : right_slot(std::abs(l));
    }
    int other_side(int slot) const { return slot % 5 == 0 ? slot + 2 : slot - 2; }

    // returns +1 if x before y in ccw order on the starting side, -1 after, 0 undecided
    int race(Walker x, Walker y, int side) const {
        const int total = 5 * n_;
        for (int guard = 0; guard < 100000; ++guard) {
            const int nx = x.ev + x.dir, ny = y.ev + y.dir;
            const int ax = arrival_slot(x, nx), ay = arrival_slot(y, ny);
            if (ax != ay) {
                const int dx = ((ax - side) % total + total) % total;
                const int dy = ((ay - side) % total + total) % total;
                return dy < dx ? 1 : -1;
            }
            if (ax % 5 == 1) return 0;  // same corner
            if (ax % 5 == 4) return 0;  // same boundary point: same arc
            x.ev = nx;
            y.ev = ny;
            side = other_side(ax);
        }
        throw std::logic_error("ray ordering did not terminate");
    }

    bool below(std::pair<int, int> p, std::pair<int, int> q) const {
        if (p == q) return false;
        const int lp = arcs_[p.first].word[p.second], lq = arcs_[q.first].word[q.second];
        const int k = std::abs(lp);
        // walkers leaving into the left side of ray k
        Walker x{p.first, p.second + 1, lp > 0 ? -1 : 1};
        Walker y{q.first, q.second + 1, lq > 0 ? -1 : 1};
        int r = race(x, y, left_slot(k));
        if (r != 0) return r > 0;  // ccw on the left side is upward
        Walker x2{p.first, p.second + 1, -x.dir};
        Walker y2{q.first, q.second + 1, -y.dir};
        r = race(x2, y2, right_slot(k));
        if (r != 0) return r < 0;  // ccw on the right side is downward
        throw std::logic_error("indistinguishable crossings");
    }

    int n_;
    std::vector<Arc> arcs_;
    std::vector<std::vector<std::pair<int, int>>> order_;
};

}  // namespace bdc
