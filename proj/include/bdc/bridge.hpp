#pragma once
// Bridge diagram: the doubled disk S^2 = D^(0) u D^(1) with the A-arcs (rays in both copies),
// the B-arcs (b_i in copy 0 glued to h(b_i) in copy 1) and the branch points, stored as a
// rotation system.  Copy 1 is attached with reversed orientation.

#include "bdc/arcs.hpp"

#include <array>
#include <queue>

namespace bdc {

enum class EdgeKind { Alpha, Beta, Aux };

struct PVertex {
    enum Kind { Puncture, Crossing, Foot, Endpoint, Finger } kind = Finger;
    int copy = 0;   // 0, 1; equator points use 0
    int label = 0;  // puncture / ray index, or arc index for endpoints
    bool branch() const { return kind == Puncture; }
};

struct PEdge {
    EdgeKind kind = EdgeKind::Aux;
    int curve = -1;  // alpha: puncture index; beta: arc index; aux: -1
    bool cut = false;
};

struct PHalf {
    int origin = -1, twin = -1, rot_next = -1, rot_prev = -1, edge = -1;
};

class PlanarMap {
public:
    std::vector<PVertex> vertices;
    std::vector<PEdge> edges;
    std::vector<PHalf> halves;

    int add_vertex(PVertex v) {
        vertices.push_back(v);
        return static_cast<int>(vertices.size()) - 1;
    }
    // returns the half-edge leaving u; its twin leaves v.  Rotation is left unset.
    int add_edge(int u, int v, PEdge e) {
        edges.push_back(e);
        const int id = static_cast<int>(edges.size()) - 1;
        const int h = static_cast<int>(halves.size());
        halves.push_back({u, h + 1, -1, -1, id});
        halves.push_back({v, h, -1, -1, id});
        return h;
    }
    // ccw cyclic order of half-edges leaving a vertex
    void set_rotation(const std::vector<int>& ccw) {
        const std::size_t m = ccw.size();
        for (std::size_t i = 0; i < m; ++i) {
            halves[ccw[i]].rot_next = ccw[(i + 1) % m];
            halves[ccw[(i + 1) % m]].rot_prev = ccw[i];
        }
    }
    int twin(int h) const { return halves[h].twin; }
    int head(int h) const { return halves[twin(h)].origin; }
    // next half-edge along the face on the left
    int next(int h) const { return halves[twin(h)].rot_prev; }
    const PEdge& edge_of(int h) const { return edges[halves[h].edge]; }

    // split the edge of h at a new vertex; returns the half-edge from the new vertex to head(h)
    int split(int h, PVertex v) {
        const int x = add_vertex(v);
        const int t = twin(h);
        const int b = head(h);
        const PEdge e = edges[halves[h].edge];
        const int g = add_edge(x, b, e);  // x -> b, twin b -> x
        // h now ends at x; the old twin t becomes x -> a
        halves[t].origin = x;
        // replace t at b's rotation by twin(g)
        const int gt = twin(g);
        if (halves[t].rot_next == t) {
            halves[gt].rot_next = halves[gt].rot_prev = gt;
        } else {
            halves[gt].rot_next = halves[t].rot_next;
            halves[gt].rot_prev = halves[t].rot_prev;
            halves[halves[t].rot_next].rot_prev = gt;
            halves[halves[t].rot_prev].rot_next = gt;
        }
        // at x: two half-edges g (toward b) and t (toward a)
        set_rotation({g, t});
        // pieces h: a->x and g: x->b, twins t: x->a, gt: b->x
        return g;
    }
    // insert a half-edge at its origin right after `after` in ccw order
    void insert_after(int after, int h) {
        const int nx = halves[after].rot_next;
        halves[after].rot_next = h;
        halves[h].rot_prev = after;
        halves[h].rot_next = nx;
        halves[nx].rot_prev = h;
    }
    // new edge from origin(ha) to origin(hb), placed in the corners following ha and hb
    int connect(int ha, int hb, PEdge e) {
        const int h = add_edge(halves[ha].origin, halves[hb].origin, e);
        insert_after(ha, h);
        insert_after(hb, twin(h));
        return h;
    }

    // faces as orbits of next; face_of[h] = face on the left of h
    std::vector<int> face_of;
    std::vector<std::vector<int>> faces;
    void trace_faces() {
        face_of.assign(halves.size(), -1);
        faces.clear();
        for (int h = 0; h < static_cast<int>(halves.size()); ++h) {
            if (face_of[h] >= 0) continue;
            const int f = static_cast<int>(faces.size());
            faces.push_back({});
            int c = h;
            do {
                face_of[c] = f;
                faces[f].push_back(c);
                c = next(c);
            } while (c != h);
        }
    }
    int euler_characteristic() {
        trace_faces();
        return static_cast<int>(vertices.size()) - static_cast<int>(edges.size()) + static_cast<int>(faces.size());
    }
    std::vector<int> outgoing(int v) const {
        std::vector<int> r;
        int start = -1;
        for (int h = 0; h < static_cast<int>(halves.size()); ++h)
            if (halves[h].origin == v) { start = h; break; }
        if (start < 0) return r;
        int c = start;
        do {
            r.push_back(c);
            c = halves[c].rot_next;
        } while (c != start && r.size() <= halves.size());
        return r;
    }
};

struct BridgeDiagram {
    int n = 1;
    int base = 1;
    BraidWord monodromy;                 // in the frame where a-arcs are the rays
    std::vector<int> arc_punctures;      // B-arc t starts at p_{arc_punctures[t]} in copy 0
    std::vector<Arc> image_arcs;         // h(b) in copy 1
    PlanarMap map;
    std::vector<int> branch0, branch1;   // vertex ids of p_k in copy 0 / 1 (index k, slot 0 unused)
    int base_vertex = -1;                // p_base in copy 0

    int genus() const { return n - 1; }
};

namespace detail {

struct RotBuilder {
    // per vertex: (key, half-edge)
    std::vector<std::vector<std::pair<int, int>>> slots;
    void add(int v, int key, int h) {
        if (static_cast<int>(slots.size()) <= v) slots.resize(v + 1);
        slots[v].push_back({key, h});
    }
    void apply(PlanarMap& m, const std::vector<bool>& reversed) {
        for (int v = 0; v < static_cast<int>(slots.size()); ++v) {
            auto s = slots[v];
            std::sort(s.begin(), s.end());
            std::vector<int> ccw;
            for (auto& p : s) ccw.push_back(p.second);
            if (reversed[v]) std::reverse(ccw.begin(), ccw.end());
            if (!ccw.empty()) m.set_rotation(ccw);
        }
    }
};

}  // namespace detail

// image arcs must end where the standard b-arcs end (monodromy fixes the boundary)
inline bool check_boundary_fixed(int n, const std::vector<int>& punct, const std::vector<Arc>& img) {
    for (std::size_t t = 0; t < img.size(); ++t)
        if (img[t].end_gap != standard_b_arc(n, punct[t]).end_gap)
            throw std::logic_error("image arc left its boundary gap");
    return true;
}

// Standard-frame construction: a-arcs are the rays l_k (k != base), b-arcs standard.
inline BridgeDiagram build_bridge(int n, int base, const BraidWord& w) {
    if (w.strands != n) throw InputError("strand count does not match puncture count");
    BridgeDiagram bd;
    bd.n = n;
    bd.base = base;
    bd.monodromy = w;
    for (int k = 1; k <= n; ++k)
        if (k != base) bd.arc_punctures.push_back(k);
    std::vector<Arc> b0;
    for (int k : bd.arc_punctures) {
        b0.push_back(standard_b_arc(n, k));
        bd.image_arcs.push_back(apply_word(b0.back(), w));
    }
    check_boundary_fixed(n, bd.arc_punctures, bd.image_arcs);
    const int m = static_cast<int>(b0.size());
    PlanarMap& pm = bd.map;
    detail::RotBuilder rb;
    std::vector<bool> rev;
    auto vert = [&](PVertex v, bool reversed) {
        int id = pm.add_vertex(v);
        rev.push_back(reversed);
        return id;
    };
    auto ray_edge = [&](int k) { return PEdge{k == base ? EdgeKind::Aux : EdgeKind::Alpha, k == base ? -1 : k, true}; };

    bd.branch0.assign(n + 1, -1);
    bd.branch1.assign(n + 1, -1);
    std::vector<int> foot(n + 1), qpt(n + 1, -1);
    for (int k = 1; k <= n; ++k) {
        bd.branch0[k] = vert({PVertex::Puncture, 0, k}, false);
        bd.branch1[k] = vert({PVertex::Puncture, 1, k}, true);
    }
    bd.base_vertex = bd.branch0[base];
    for (int k = 1; k <= n; ++k) {
        foot[k] = vert({PVertex::Foot, 0, k}, false);
        if (k != base) qpt[k] = vert({PVertex::Endpoint, 0, k}, false);
    }
    // keys: puncture {down 0, chord 1}; crossing {up 0, left 1, down 2, right 3};
    // equator {east 0, copy0 1, west 2, copy1 3}

    // equator ring
    std::vector<int> ring;
    for (int k = 1; k <= n; ++k) {
        ring.push_back(foot[k]);
        if (qpt[k] >= 0) ring.push_back(qpt[k]);
    }
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const int u = ring[i], v = ring[(i + 1) % ring.size()];
        int h = pm.add_edge(u, v, PEdge{EdgeKind::Aux, -1, false});
        rb.add(u, 0, h);
        rb.add(v, 2, pm.twin(h));
    }

    // copy 0: rays without crossings, standard chords
    for (int k = 1; k <= n; ++k) {
        int h = pm.add_edge(bd.branch0[k], foot[k], ray_edge(k));
        rb.add(bd.branch0[k], 0, h);
        rb.add(foot[k], 1, pm.twin(h));
    }
    for (int t = 0; t < m; ++t) {
        const int k = bd.arc_punctures[t];
        int h = pm.add_edge(bd.branch0[k], qpt[k], PEdge{EdgeKind::Beta, t, false});
        rb.add(bd.branch0[k], 1, h);
        rb.add(qpt[k], 1, pm.twin(h));
    }

    // copy 1: rays subdivided at the crossings of the image arcs
    RayOrder order(n, bd.image_arcs);
    std::vector<std::vector<int>> cross_v(m);
    for (int t = 0; t < m; ++t) cross_v[t].assign(bd.image_arcs[t].word.size(), -1);
    for (int k = 1; k <= n; ++k) {
        const auto& seq = order.ray(k);  // bottom to top
        int below = foot[k];
        int below_key = 3;
        for (auto [t, i] : seq) {
            const int c = vert({PVertex::Crossing, 1, k}, true);
            cross_v[t][i] = c;
            int h = pm.add_edge(below, c, ray_edge(k));
            rb.add(below, below_key, h);
            rb.add(c, 2, pm.twin(h));
            below = c;
            below_key = 0;
        }
        int h = pm.add_edge(below, bd.branch1[k], ray_edge(k));
        rb.add(below, below_key, h);
        rb.add(bd.branch1[k], 0, pm.twin(h));
    }
    for (int t = 0; t < m; ++t) {
        const Arc& a = bd.image_arcs[t];
        const int L = static_cast<int>(a.word.size());
        int prev = bd.branch1[a.start];
        int prev_key = 1;
        for (int i = 0; i <= L; ++i) {
            int cur, cur_key;
            if (i < L) {
                cur = cross_v[t][i];
                cur_key = a.word[i] > 0 ? 1 : 3;  // arriving from the left side for +k
            } else {
                cur = qpt[bd.arc_punctures[t]];
                cur_key = 3;
            }
            int h = pm.add_edge(prev, cur, PEdge{EdgeKind::Beta, t, false});
            rb.add(prev, prev_key, h);
            rb.add(cur, cur_key, pm.twin(h));
            if (i < L) {
                prev = cur;
                prev_key = a.word[i] > 0 ? 3 : 1;
            }
        }
    }
    rb.apply(pm, rev);
    return bd;
}

inline BridgeDiagram to_bridge_diagram(const ArcSystem& s, const BraidWord& w) {
    ArcSystem t = s;
    if (t.monodromy.letters.empty() && !w.letters.empty()) t = apply_braid(w, s);
    auto sf = standard_form(t);
    return build_bridge(sf.n, sf.base, sf.monodromy);
}

inline std::vector<std::string> bridge_violations(BridgeDiagram& bd) {
    std::vector<std::string> v;
    PlanarMap& m = bd.map;
    for (int h = 0; h < static_cast<int>(m.halves.size()); ++h) {
        const auto& x = m.halves[h];
        if (x.rot_next < 0 || x.rot_prev < 0) { v.push_back("half-edge without rotation"); continue; }
        if (m.halves[x.rot_next].origin != x.origin) v.push_back("rotation leaves its vertex");
        if (m.twin(m.twin(h)) != h) v.push_back("twin not involutive");
    }
    if (!v.empty()) return v;
    if (m.euler_characteristic() != 2) v.push_back("bridge diagram is not a sphere");
    // each branch point meets exactly one cut edge
    for (int u = 0; u < static_cast<int>(m.vertices.size()); ++u) {
        int cuts = 0;
        for (int h : m.outgoing(u)) cuts += m.edge_of(h).cut;
        if (m.vertices[u].branch() ? cuts != 1 : cuts % 2 != 0) v.push_back("cut parity wrong at a vertex");
    }
    return v;
}

}  // namespace bdc

namespace bdc {

// Finger move of a curve: starts on the half-edge `root` (pushing into the face on its
// left) and crosses the listed half-edges in order, each seen from the face the finger is in.
inline void finger_move(PlanarMap& m, int root, const std::vector<int>& crossings) {
    const PEdge curve = m.edge_of(root);
    if (curve.kind == EdgeKind::Aux) throw std::logic_error("finger must start on a curve");
    for (int g : crossings)
        if (m.edge_of(g).kind == curve.kind) throw std::logic_error("finger cannot cross its own family");
    const int a1 = m.split(root, {PVertex::Finger, 0, 0});   // sL -> b
    const int a2 = m.split(a1, {PVertex::Finger, 0, 0});     // sR -> b
    m.edges[m.halves[a1].edge].kind = EdgeKind::Aux;
    m.edges[m.halves[a1].edge].curve = -1;
    PEdge arm{curve.kind, curve.curve, false};
    // corners: first/second of the pair the finger currently sits behind
    int first = a1, second = a2;
    for (int g : crossings) {
        const int p = m.split(g, {PVertex::Finger, 0, 0});  // P -> b  (corner of P in this face)
        const int q = m.split(p, {PVertex::Finger, 0, 0});  // Q -> b
        m.connect(second, p, arm);
        m.connect(first, q, arm);
        // seen from the far side the pair is (Q, P); corners there: Q -> P and P -> a
        first = m.twin(p);
        second = m.twin(g);
    }
    m.connect(second, first, arm);
}

}  // namespace bdc
