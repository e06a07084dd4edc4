#pragma once
// Hat Floer complex of a nice diagram: index one positive domains are empty embedded bigons and
// rectangles, counted once each.

#include "bdc/complex.hpp"
#include "bdc/domains.hpp"

#include <deque>

namespace bdc {

struct NiceReport {
    bool nice = true;
    std::vector<int> bad_regions;
};

inline int region_badness(const HeegaardDiagram& h, int r) {
    if (r == h.z_region) return 0;
    if (h.region_chi[r] != 1) return 100 * (1 + std::abs(1 - h.region_chi[r]));
    return std::max(0, h.region_corners[r] - 4);
}

inline NiceReport is_nice(const HeegaardDiagram& h) {
    NiceReport rep;
    for (int r = 0; r < h.num_regions; ++r)
        if (region_badness(h, r) > 0) {
            rep.nice = false;
            rep.bad_regions.push_back(r);
        }
    return rep;
}

namespace detail {

// integer points k with lo <= d0 + sum k_i P_i <= hi on every region
inline void lattice_box_points(const Domain& d0, const std::vector<Domain>& per, long long lo, long long hi,
                               const std::function<void(const Domain&)>& emit) {
    const std::size_t r = per.size();
    if (r == 0) {
        for (auto v : d0)
            if (v < lo || v > hi) return;
        emit(d0);
        return;
    }
    // bounds on k_0 from the projection, then recurse with k_0 fixed
    std::vector<Ineq> sys;
    for (std::size_t reg = 0; reg < d0.size(); ++reg) {
        Ineq up{std::vector<mpq_class>(r), static_cast<long>(hi - d0[reg])};
        Ineq dn{std::vector<mpq_class>(r), static_cast<long>(d0[reg] - lo)};
        bool nz = false;
        for (std::size_t i = 0; i < r; ++i) {
            up.a[i] = -static_cast<long>(per[i][reg]);
            dn.a[i] = static_cast<long>(per[i][reg]);
            nz |= per[i][reg] != 0;
        }
        if (!nz) {
            if (d0[reg] < lo || d0[reg] > hi) return;
            continue;
        }
        sys.push_back(up);
        sys.push_back(dn);
    }
    // eliminate k_1.. k_{r-1}
    std::vector<Ineq> cur = sys;
    for (std::size_t v = r; v-- > 1;) {
        std::vector<Ineq> pos, neg, next;
        for (auto& e : cur) {
            if (e.a[v] > 0) pos.push_back(e);
            else if (e.a[v] < 0) neg.push_back(e);
            else next.push_back(e);
        }
        for (auto& p : pos)
            for (auto& q : neg) {
                Ineq e;
                e.a.resize(r);
                const mpq_class fp = -q.a[v], fq = p.a[v];
                for (std::size_t i = 0; i < r; ++i) e.a[i] = fp * p.a[i] + fq * q.a[i];
                e.c = fp * p.c + fq * q.c;
                e.a[v] = 0;
                normalize(e);
                next.push_back(e);
            }
        cur = next;
    }
    std::optional<mpq_class> klo, khi;
    for (auto& e : cur) {
        if (e.a[0] == 0) {
            if (e.c < 0) return;
            continue;
        }
        const mpq_class b = -e.c / e.a[0];
        if (e.a[0] > 0) { if (!klo || b > *klo) klo = b; }
        else if (!khi || b < *khi) khi = b;
    }
    if (!klo || !khi) throw std::logic_error("unbounded domain search (diagram not admissible)");
    mpz_class a, b;
    mpz_cdiv_q(a.get_mpz_t(), klo->get_num_mpz_t(), klo->get_den_mpz_t());
    mpz_fdiv_q(b.get_mpz_t(), khi->get_num_mpz_t(), khi->get_den_mpz_t());
    std::vector<Domain> rest(per.begin() + 1, per.end());
    for (long k = a.get_si(); k <= b.get_si(); ++k) {
        Domain d = d0;
        for (std::size_t reg = 0; reg < d.size(); ++reg) d[reg] += k * per[0][reg];
        lattice_box_points(d, rest, lo, hi, emit);
    }
}

}  // namespace detail

struct FloerData {
    Generators gens;
    GradedGenerators graded;
    FloerComplex complex;
    long long counted_disks = 0;
};

// chain differential x -> sum y over index one empty embedded bigons / rectangles from x to y
inline FloerData differential(const HeegaardDiagram& h) {
    if (!is_nice(h).nice) throw std::logic_error("differential needs a nice diagram");
    FloerData fd;
    DomainSystem ds(h);
    fd.gens = enumerate_generators(h);
    fd.graded = grade_generators(h, ds, fd.gens);
    const auto& g = fd.gens;
    const int N = static_cast<int>(g.tuples.size());
    fd.complex.gens.resize(N);
    fd.complex.d.assign(N, {});
    for (int x = 0; x < N; ++x)
        fd.complex.gens[x] = {fd.graded.spinc[x], static_cast<int>(fd.graded.grading[x]), g.tau[x]};
    for (auto [s, p] : fd.graded.period)
        if (p > 0) fd.complex.period[s] = static_cast<int>(p);

    // neighbours differing in at most two coordinates
    for (int x = 0; x < N; ++x) {
        const auto& tx = g.tuples[x];
        for (int y = 0; y < N; ++y) {
            if (y == x || fd.graded.spinc[y] != fd.graded.spinc[x]) continue;
            const auto& ty = g.tuples[y];
            int diff = 0;
            for (int a = 0; a < h.num_alpha; ++a) diff += tx[a] != ty[a];
            if (diff > 2) continue;
            const long long per = fd.graded.period[fd.graded.spinc[x]];
            long long gd = fd.graded.grading[x] - fd.graded.grading[y] - 1;
            if (per > 0 ? gd % per != 0 : gd != 0) continue;
            const Domain d0 = fd.graded.connecting(x, y);
            int count = 0;
            detail::lattice_box_points(d0, ds.periodic, 0, 1, [&](const Domain& d) {
                if (d[h.z_region] != 0) return;
                bool any = false;
                for (auto v : d) any |= v != 0;
                if (!any) return;
                if (maslov_index(h, d, tx, ty) != 1) return;
                ++count;
            });
            fd.counted_disks += count;
            if (count % 2) fd.complex.d[x].push_back(y);
        }
    }
    return fd;
}

}  // namespace bdc

namespace bdc {

namespace detail {

// 0-1 distances of bridge faces to the faces under the basepoint region (crossing beta costs 1,
// aux is free, alpha is a wall); also a successor half-edge toward the target
struct FaceDistances {
    std::vector<int> dist, toward;
};

inline FaceDistances face_distances(const PlanarMap& m, const std::vector<bool>& target,
                                    EdgeKind wall = EdgeKind::Alpha) {
    const int F = static_cast<int>(m.faces.size());
    FaceDistances fd{std::vector<int>(F, std::numeric_limits<int>::max()), std::vector<int>(F, -1)};
    std::deque<int> dq;
    for (int f = 0; f < F; ++f)
        if (target[f]) {
            fd.dist[f] = 0;
            dq.push_back(f);
        }
    while (!dq.empty()) {
        const int f = dq.front();
        dq.pop_front();
        for (int h : m.faces[f]) {
            const auto& e = m.edge_of(h);
            if (e.kind == wall) continue;
            const int g = m.face_of[m.twin(h)];
            const int w = e.kind == EdgeKind::Aux ? 0 : 1;
            if (fd.dist[f] + w < fd.dist[g]) {
                fd.dist[g] = fd.dist[f] + w;
                fd.toward[g] = m.twin(h);  // crossing this half-edge from g leads to f
                if (w) dq.push_back(g);
                else dq.push_front(g);
            }
        }
    }
    return fd;
}

struct NiceState {
    std::vector<long long> key;  // badness by distance, farthest first
    long long total = 0;
};

inline NiceState nice_state(BridgeDiagram& bd) {
    bd.map.trace_faces();
    HeegaardDiagram hd = branched_double_cover(bd);
    const PlanarMap& m = bd.map;
    std::vector<bool> target(m.faces.size(), false);
    for (int h = 0; h < static_cast<int>(m.halves.size()); ++h)
        if (hd.region_of_face[hd.face[2 * h]] == hd.z_region) target[m.face_of[h]] = true;
    auto fdist = face_distances(m, target);
    std::vector<int> rdist(hd.num_regions, std::numeric_limits<int>::max());
    for (int h = 0; h < static_cast<int>(m.halves.size()); ++h)
        for (int s = 0; s < 2; ++s) {
            int r = hd.region_of_face[hd.face[2 * h + s]];
            rdist[r] = std::min(rdist[r], fdist.dist[m.face_of[h]]);
        }
    NiceState st;
    const int D = 64;
    st.key.assign(D, 0);
    for (int r = 0; r < hd.num_regions; ++r) {
        const int b = region_badness(hd, r);
        if (!b) continue;
        st.total += b;
        st.key[D - 1 - std::min(rdist[r], D - 1)] += b;
    }
    return st;
}


// routes for a finger rooted at h: wander through the root region along aux edges, then
// descend the distance field to the target
inline std::vector<std::vector<int>> finger_paths(const PlanarMap& m, int h, const std::vector<bool>& target,
                                                  const FaceDistances& fdist, EdgeKind fam) {
    const int f0 = m.face_of[h];
    std::map<int, std::vector<int>> inside{{f0, {}}};
    std::deque<int> q{f0};
    while (!q.empty()) {
        const int f = q.front();
        q.pop_front();
        for (int g : m.faces[f]) {
            if (m.edge_of(g).kind != EdgeKind::Aux) continue;
            const int f2 = m.face_of[m.twin(g)];
            if (inside.count(f2) || target[f2]) continue;
            auto pth = inside[f];
            pth.push_back(g);
            inside[f2] = pth;
            q.push_back(f2);
        }
    }
    std::vector<std::vector<int>> paths;
    for (auto& [f1, pre] : inside)
        for (int g : m.faces[f1]) {
            if (m.edge_of(g).kind == fam) continue;
            std::vector<int> path = pre;
            path.push_back(g);
            std::set<int> visited{f0};
            for (int x : pre) visited.insert(m.face_of[m.twin(x)]);
            int f = m.face_of[m.twin(g)];
            bool ok = true;
            while (!target[f]) {
                if (!visited.insert(f).second || fdist.toward[f] < 0) { ok = false; break; }
                path.push_back(fdist.toward[f]);
                f = m.face_of[m.twin(fdist.toward[f])];
            }
            if (ok && !visited.count(f)) paths.push_back(path);
        }
    return paths;
}

}  // namespace detail

namespace detail {

struct FingerCandidate {
    NiceState state;
    BridgeDiagram bd;
};

// every equivariant finger move (alpha or beta) rooted in a bad region that leaves a valid diagram
inline std::vector<FingerCandidate> finger_candidates(BridgeDiagram& bd) {
    bd.map.trace_faces();
    HeegaardDiagram hd = branched_double_cover(bd);
    const PlanarMap& m = bd.map;
    std::vector<bool> target(m.faces.size(), false);
    for (int h = 0; h < static_cast<int>(m.halves.size()); ++h)
        if (hd.region_of_face[hd.face[2 * h]] == hd.z_region) target[m.face_of[h]] = true;
    std::set<int> bad_faces;
    for (int h = 0; h < static_cast<int>(m.halves.size()); ++h)
        if (region_badness(hd, hd.region_of_face[hd.face[2 * h]]) > 0) bad_faces.insert(m.face_of[h]);
    std::vector<FingerCandidate> out;
    for (EdgeKind fam : {EdgeKind::Alpha, EdgeKind::Beta}) {
        auto fdist = face_distances(m, target, fam);
        for (int h = 0; h < static_cast<int>(m.halves.size()); ++h) {
            if (m.edge_of(h).kind != fam || !bad_faces.count(m.face_of[h])) continue;
            for (auto& path : finger_paths(m, h, target, fdist, fam)) {
                BridgeDiagram trial = bd;
                finger_move(trial.map, h, path);
                if (!bridge_violations(trial).empty()) continue;
                try {
                    auto st = nice_state(trial);
                    out.push_back({std::move(st), std::move(trial)});
                } catch (const std::logic_error&) {
                }
            }
        }
    }
    return out;
}

inline bool better(const NiceState& a, const NiceState& b) {
    return a.key < b.key || (a.key == b.key && a.total < b.total);
}

// best improvement over cur: distance order first, then total badness
inline const FingerCandidate* pick(const std::vector<FingerCandidate>& cs, const NiceState& cur) {
    const FingerCandidate *best = nullptr, *fallback = nullptr;
    for (auto& c : cs) {
        if (!best || better(c.state, best->state)) best = &c;
        if (!fallback || c.state.total < fallback->state.total) fallback = &c;
    }
    if (best && best->state.key < cur.key) return best;
    if (fallback && fallback->state.total < cur.total) return fallback;
    return nullptr;
}

}  // namespace detail

// Sarkar-Wang style finger moves performed in the bridge diagram, so that the lifted moves come
// in tau-pairs and the cover stays involutive.  One step of lookahead when stuck.
inline int nicify(BridgeDiagram& bd, int budget) {
    int moves = 0;
    for (;;) {
        auto cur = detail::nice_state(bd);
        if (cur.total == 0) return moves;
        if (moves >= budget) throw std::runtime_error("nicify: move budget exhausted");
        auto cs = detail::finger_candidates(bd);
        if (auto* c = detail::pick(cs, cur)) {
            bd = c->bd;
            ++moves;
            continue;
        }
        std::sort(cs.begin(), cs.end(), [](auto& a, auto& b) { return detail::better(a.state, b.state); });
        if (cs.size() > 24) cs.resize(24);
        bool done = false;
        for (auto& c : cs) {
            auto next = detail::finger_candidates(c.bd);
            if (auto* d = detail::pick(next, cur)) {
                bd = d->bd;
                moves += 2;
                done = true;
                break;
            }
        }
        if (!done) throw std::runtime_error("nicify: no improving finger move");
    }
}

}  // namespace bdc
