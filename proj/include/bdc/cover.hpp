#pragma once
// Branched double cover of a bridge diagram.  Sheets are labelled by cutting along the cut
// edges (the rays, which pair up the branch points); a lifted half-edge is (h, s).

#include "bdc/bridge.hpp"

#include <boost/pending/disjoint_sets.hpp>

namespace bdc {

struct Intersection {
    int vertex = -1;          // upstairs vertex id
    int alpha = -1, beta = -1;
    std::array<int, 4> sectors{};  // regions of the four corners
    bool branch = false;
    int tau = -1;             // index of the image intersection
};

struct HeegaardDiagram {
    const PlanarMap* base_map = nullptr;  // owned by the bridge diagram
    int genus = 0;
    int num_alpha = 0, num_beta = 0;
    std::vector<int> alpha_label, beta_label;  // puncture index / arc index downstairs

    // lifted half-edges, index 2h + s
    std::vector<int> origin, face;  // upstairs vertex and face on the left
    int num_vertices = 0, num_faces = 0;
    std::vector<bool> vertex_branch;
    std::vector<int> vertex_tau, face_tau;

    std::vector<int> region_of_face;
    int num_regions = 0;
    std::vector<int> region_tau;
    std::vector<int> region_chi, region_corners;
    std::vector<std::vector<int>> region_faces;
    int z_region = -1;

    std::vector<Intersection> points;
    std::vector<std::vector<int>> points_on_alpha;  // alpha index -> intersection ids

    // alpha edges upstairs with curve orientation: (curve, left region, right region, tail, head vertex)
    struct AlphaSeg { int curve, left, right, tail, head; };
    std::vector<AlphaSeg> alpha_segments;

    int lifted_twin(int x) const {
        const int h = x / 2, s = x % 2;
        return 2 * base_map->twin(h) + (s ^ static_cast<int>(base_map->edge_of(h).cut));
    }
    int lifted_next(int x) const { return 2 * base_map->next(x / 2) + x % 2; }
    int lifted_rot_next(int x) const {
        const int h2 = base_map->halves[x / 2].rot_next;
        return 2 * h2 + ((x % 2) ^ static_cast<int>(base_map->edge_of(h2).cut));
    }
    const PEdge& edge_of(int x) const { return base_map->edge_of(x / 2); }
    int euler_characteristic() const {
        return num_vertices - static_cast<int>(origin.size()) / 2 + num_faces;
    }
};

inline int alpha_index(const HeegaardDiagram& hd, int label) {
    for (int i = 0; i < hd.num_alpha; ++i)
        if (hd.alpha_label[i] == label) return i;
    return -1;
}

inline HeegaardDiagram branched_double_cover(const BridgeDiagram& bd) {
    HeegaardDiagram hd;
    const PlanarMap& pm = bd.map;
    hd.base_map = &pm;
    hd.genus = bd.n - 1;
    for (int k = 1; k <= bd.n; ++k)
        if (k != bd.base) hd.alpha_label.push_back(k);
    for (int t = 0; t < static_cast<int>(bd.arc_punctures.size()); ++t) hd.beta_label.push_back(t);
    hd.num_alpha = static_cast<int>(hd.alpha_label.size());
    hd.num_beta = static_cast<int>(hd.beta_label.size());

    const int H = 2 * static_cast<int>(pm.halves.size());
    hd.origin.assign(H, -1);
    hd.face.assign(H, -1);
    for (int x = 0; x < H; ++x) {
        if (hd.origin[x] >= 0) continue;
        const int v = hd.num_vertices++;
        hd.vertex_branch.push_back(pm.vertices[pm.halves[x / 2].origin].branch());
        int c = x;
        do {
            hd.origin[c] = v;
            c = hd.lifted_rot_next(c);
        } while (c != x);
    }
    for (int x = 0; x < H; ++x) {
        if (hd.face[x] >= 0) continue;
        const int f = hd.num_faces++;
        int c = x;
        do {
            hd.face[c] = f;
            c = hd.lifted_next(c);
        } while (c != x);
    }
    hd.vertex_tau.assign(hd.num_vertices, -1);
    hd.face_tau.assign(hd.num_faces, -1);
    for (int x = 0; x < H; ++x) {
        hd.vertex_tau[hd.origin[x]] = hd.origin[x ^ 1];
        hd.face_tau[hd.face[x]] = hd.face[x ^ 1];
    }

    // regions: faces glued along aux edges
    std::vector<int> rank(hd.num_faces), parent(hd.num_faces);
    boost::disjoint_sets<int*, int*> ds(rank.data(), parent.data());
    for (int f = 0; f < hd.num_faces; ++f) ds.make_set(f);
    for (int x = 0; x < H; ++x)
        if (hd.edge_of(x).kind == EdgeKind::Aux) ds.union_set(hd.face[x], hd.face[hd.lifted_twin(x)]);
    std::map<int, int> rep;
    hd.region_of_face.assign(hd.num_faces, -1);
    for (int f = 0; f < hd.num_faces; ++f) {
        int r = ds.find_set(f);
        auto it = rep.find(r);
        if (it == rep.end()) it = rep.emplace(r, static_cast<int>(rep.size())).first;
        hd.region_of_face[f] = it->second;
    }
    hd.num_regions = static_cast<int>(rep.size());
    hd.region_faces.assign(hd.num_regions, {});
    for (int f = 0; f < hd.num_faces; ++f) hd.region_faces[hd.region_of_face[f]].push_back(f);
    hd.region_tau.assign(hd.num_regions, -1);
    for (int f = 0; f < hd.num_faces; ++f) hd.region_tau[hd.region_of_face[f]] = hd.region_of_face[hd.face_tau[f]];

    // Euler characteristic of each region as an open cell union
    hd.region_chi.assign(hd.num_regions, 0);
    for (int f = 0; f < hd.num_faces; ++f) hd.region_chi[hd.region_of_face[f]] += 1;
    for (int x = 0; x < H; x += 1) {
        const int y = hd.lifted_twin(x);
        if (x < y && hd.edge_of(x).kind == EdgeKind::Aux) hd.region_chi[hd.region_of_face[hd.face[x]]] -= 1;
    }
    {
        std::vector<bool> on_curve(hd.num_vertices, false);
        std::vector<int> some_half(hd.num_vertices, -1);
        for (int x = 0; x < H; ++x) {
            if (hd.edge_of(x).kind != EdgeKind::Aux) on_curve[hd.origin[x]] = true;
            some_half[hd.origin[x]] = x;
        }
        for (int v = 0; v < hd.num_vertices; ++v)
            if (!on_curve[v]) hd.region_chi[hd.region_of_face[hd.face[some_half[v]]]] += 1;
    }

    hd.z_region = hd.region_of_face[hd.face[2 * pm.outgoing(bd.base_vertex).front()]];

    // intersection points and corners
    hd.region_corners.assign(hd.num_regions, 0);
    std::vector<int> first_half(hd.num_vertices, -1);
    for (int x = 0; x < H; ++x)
        if (first_half[hd.origin[x]] < 0) first_half[hd.origin[x]] = x;
    std::vector<int> point_of_vertex(hd.num_vertices, -1);
    for (int v = 0; v < hd.num_vertices; ++v) {
        std::vector<int> curve_halves;
        int c = first_half[v];
        do {
            if (hd.edge_of(c).kind != EdgeKind::Aux) curve_halves.push_back(c);
            c = hd.lifted_rot_next(c);
        } while (c != first_half[v]);
        int na = 0, nb = 0;
        for (int x : curve_halves) (hd.edge_of(x).kind == EdgeKind::Alpha ? na : nb) += 1;
        if (na == 0 || nb == 0) continue;
        if (na != 2 || nb != 2) throw std::logic_error("non-transverse intersection in cover");
        Intersection ip;
        ip.vertex = v;
        ip.branch = hd.vertex_branch[v];
        int k = 0;
        for (std::size_t i = 0; i < curve_halves.size(); ++i) {
            const int a = curve_halves[i], b = curve_halves[(i + 1) % curve_halves.size()];
            if (hd.edge_of(a).kind == hd.edge_of(b).kind) throw std::logic_error("curves do not alternate at a crossing");
            ip.sectors[k++] = hd.region_of_face[hd.face[a]];
            hd.region_corners[hd.region_of_face[hd.face[a]]] += 1;
            if (hd.edge_of(a).kind == EdgeKind::Alpha) ip.alpha = alpha_index(hd, hd.edge_of(a).curve);
            else ip.beta = hd.edge_of(a).curve;
        }
        point_of_vertex[v] = static_cast<int>(hd.points.size());
        hd.points.push_back(ip);
    }
    for (auto& ip : hd.points) ip.tau = point_of_vertex[hd.vertex_tau[ip.vertex]];
    hd.points_on_alpha.assign(hd.num_alpha, {});
    for (int i = 0; i < static_cast<int>(hd.points.size()); ++i) hd.points_on_alpha[hd.points[i].alpha].push_back(i);

    // oriented alpha segments: walk each alpha curve
    std::vector<bool> seen(H, false);
    for (int x = 0; x < H; ++x) {
        if (seen[x] || hd.edge_of(x).kind != EdgeKind::Alpha) continue;
        const int curve = alpha_index(hd, hd.edge_of(x).curve);
        int c = x;
        do {
            seen[c] = seen[hd.lifted_twin(c)] = true;
            const int t = hd.lifted_twin(c);
            hd.alpha_segments.push_back({curve, hd.region_of_face[hd.face[c]], hd.region_of_face[hd.face[t]],
                                         hd.origin[c], hd.origin[t]});
            // continue from the head along the other alpha half-edge
            int r = hd.lifted_rot_next(t);
            while (r != t && hd.edge_of(r).kind != EdgeKind::Alpha) r = hd.lifted_rot_next(r);
            if (r == t) throw std::logic_error("alpha curve ends");
            // at a transverse point the continuing alpha is opposite; the only other alpha here
            c = r;
        } while (c != x);
    }
    return hd;
}

inline std::vector<std::string> validate(const HeegaardDiagram& hd) {
    std::vector<std::string> v;
    if (hd.euler_characteristic() != 2 - 2 * hd.genus) v.push_back("Euler characteristic is not 2 - 2g");
    if (hd.num_alpha != hd.genus || hd.num_beta != hd.genus) v.push_back("curve count differs from genus");
    int fixed = 0;
    for (int x = 0; x < hd.num_vertices; ++x) {
        if (hd.vertex_tau[hd.vertex_tau[x]] != x) v.push_back("tau not an involution on vertices");
        fixed += hd.vertex_tau[x] == x;
        if ((hd.vertex_tau[x] == x) != hd.vertex_branch[x]) v.push_back("tau fixes a non-branch vertex");
    }
    if (fixed != 2 * (hd.genus + 1)) v.push_back("wrong number of branch points");
    for (int f = 0; f < hd.num_faces; ++f)
        if (hd.face_tau[f] == f) v.push_back("tau fixes a face");
    if (hd.z_region < 0 || hd.region_tau[hd.z_region] != hd.z_region) v.push_back("tau does not fix the basepoint region");
    // curves: each alpha / beta curve is one closed curve mapped to itself with two fixed points
    std::vector<int> afix(hd.num_alpha, 0);
    for (int x = 0; x < static_cast<int>(hd.origin.size()); ++x)
        if (hd.edge_of(x).kind == EdgeKind::Alpha && hd.vertex_branch[hd.origin[x]])
            afix[alpha_index(hd, hd.edge_of(x).curve)] += 1;
    for (int a = 0; a < hd.num_alpha; ++a)
        if (afix[a] != 4) v.push_back("alpha curve does not meet two branch points");
    std::vector<int> bfix(hd.num_beta, 0);
    for (int x = 0; x < static_cast<int>(hd.origin.size()); ++x)
        if (hd.edge_of(x).kind == EdgeKind::Beta && hd.vertex_branch[hd.origin[x]]) bfix[hd.edge_of(x).curve] += 1;
    for (int b = 0; b < hd.num_beta; ++b)
        if (bfix[b] != 4) v.push_back("beta curve does not meet two branch points");
    for (auto& p : hd.points)
        if (p.tau < 0 || hd.points[p.tau].tau != static_cast<int>(&p - hd.points.data()))
            v.push_back("tau not an involution on intersections");
    return v;
}

// ---------------------------------------------------------------------------------------------
// Generators: one intersection point on each alpha curve, distinct beta curves.

struct Generators {
    std::vector<std::vector<int>> tuples;  // tuples[x][a] = intersection on alpha a
    std::vector<int> tau;
    std::map<std::vector<int>, int> index;
};

inline Generators enumerate_generators(const HeegaardDiagram& hd) {
    Generators g;
    std::vector<int> cur(hd.num_alpha, -1);
    std::vector<bool> used(hd.num_beta, false);
    std::function<void(int)> rec = [&](int a) {
        if (a == hd.num_alpha) {
            g.index[cur] = static_cast<int>(g.tuples.size());
            g.tuples.push_back(cur);
            return;
        }
        for (int p : hd.points_on_alpha[a]) {
            const int b = hd.points[p].beta;
            if (used[b]) continue;
            used[b] = true;
            cur[a] = p;
            rec(a + 1);
            used[b] = false;
        }
    };
    rec(0);
    for (auto& t : g.tuples) {
        std::vector<int> im(hd.num_alpha);
        for (int a = 0; a < hd.num_alpha; ++a) {
            const int q = hd.points[t[a]].tau;
            im[hd.points[q].alpha] = q;
        }
        g.tau.push_back(g.index.at(im));
    }
    return g;
}

// the tuple of branch points in copy 0 at the arc punctures
inline std::vector<int> eh_tuple(const BridgeDiagram& bd, const HeegaardDiagram& hd) {
    std::vector<int> t(hd.num_alpha, -1);
    for (int i = 0; i < static_cast<int>(hd.points.size()); ++i) {
        const auto& p = hd.points[i];
        if (!p.branch) continue;
        for (int k : bd.arc_punctures) {
            const int v = bd.branch0[k];
            const int x = 2 * bd.map.outgoing(v).front();
            if (hd.origin[x] == p.vertex) t[p.alpha] = i;
        }
    }
    for (int x : t)
        if (x < 0) throw std::logic_error("EH tuple incomplete");
    return t;
}

}  // namespace bdc
