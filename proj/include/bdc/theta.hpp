#pragma once
// Equivariant cochain complex C^*[theta] with D = delta + theta (1 + tau), where delta is the
// dual of the chain differential.  theta raises grading by one, as does D.

#include "bdc/complex.hpp"

#include <climits>
#include <map>
#include <optional>
#include <tuple>

namespace bdc {

struct ThetaComplex {
    std::vector<int> gr, spinc, tau;
    std::vector<std::vector<int>> delta;  // delta[a] = targets, grading +1

    std::size_t size() const { return gr.size(); }

    // sector = tau-orbit of spinc classes, labelled by the smaller id
    int sector(int x) const { return std::min(spinc[x], spinc[tau[x]]); }
};

inline ThetaComplex build_theta_complex(const FloerComplex& c) {
    auto chk = check_complex(c);
    if (!chk.tau_involution || !chk.tau_chain_map) throw std::runtime_error("tau is not an involutive chain map");
    ThetaComplex t;
    const std::size_t n = c.size();
    t.delta.assign(n, {});
    for (std::size_t x = 0; x < n; ++x) {
        t.gr.push_back(c.gens[x].grading);
        t.spinc.push_back(c.gens[x].spinc);
        t.tau.push_back(c.gens[x].tau);
        for (int y : c.d[x]) t.delta[y].push_back(static_cast<int>(x));
    }
    for (auto& v : t.delta) std::sort(v.begin(), v.end());
    return t;
}

// Sparse representation of D on the free module: column a holds rows b with D(a) ∋ theta^k b,
// k = gr(a) + 1 - gr(b).
struct ThetaMatrix {
    std::vector<Bits> cols, rows;
    explicit ThetaMatrix(const ThetaComplex& t) {
        const std::size_t n = t.size();
        cols.assign(n, Bits(n));
        rows.assign(n, Bits(n));
        for (std::size_t a = 0; a < n; ++a) {
            for (int b : t.delta[a]) toggle(a, b);
            if (t.tau[a] != static_cast<int>(a)) {
                toggle(a, a);
                toggle(a, t.tau[a]);
            }
        }
    }
    void toggle(std::size_t a, std::size_t b) {
        cols[a].flip(b);
        rows[b].flip(a);
    }
    // column dst ^= column src
    void addcol(std::size_t dst, std::size_t src) {
        Bits c = cols[src];
        for (auto r = c.find_first(); r != Bits::npos; r = c.find_next(r)) toggle(dst, r);
    }
    // row dst ^= row src
    void addrow(std::size_t dst, std::size_t src) {
        Bits r = rows[src];
        for (auto c = r.find_first(); c != Bits::npos; c = r.find_next(c)) toggle(c, dst);
    }
};

inline bool theta_d_squared_zero(const ThetaComplex& t) {
    ThetaMatrix m(t);
    const std::size_t n = t.size();
    for (std::size_t a = 0; a < n; ++a) {
        Bits acc(n);
        // entries carry theta powers fixed by gradings, so composition is graded consistent
        for (auto b = m.cols[a].find_first(); b != Bits::npos; b = m.cols[a].find_next(b)) acc ^= m.cols[b];
        if (acc.any()) return false;
    }
    return true;
}

struct FreeTower {
    int spinc, bottom;
    bool operator<(const FreeTower& o) const { return std::tie(spinc, bottom) < std::tie(o.spinc, o.bottom); }
    bool operator==(const FreeTower&) const = default;
};
struct TorsionTower {
    int spinc, bottom, length;
    bool operator<(const TorsionTower& o) const {
        return std::tie(spinc, bottom, length) < std::tie(o.spinc, o.bottom, o.length);
    }
    bool operator==(const TorsionTower&) const = default;
};

struct ThetaModule {
    std::vector<FreeTower> free;
    std::vector<TorsionTower> torsion;
    std::size_t localized_rank() const { return free.size(); }
    bool operator==(const ThetaModule&) const = default;

    // graded F2 dimension of the module at grading g in the given sector (spinc label)
    int dim_at(int spinc, int g) const {
        int d = 0;
        for (auto& f : free)
            if (f.spinc == spinc && f.bottom <= g) ++d;
        for (auto& t : torsion)
            if (t.spinc == spinc && t.bottom <= g && g < t.bottom + t.length) ++d;
        return d;
    }
};

struct ClassProfile {
    bool nonzero = false;
    int divisibility = -1;  // -1 when the class is zero
    bool theta_torsion = true;
    std::optional<int> delta;
    int sector = 0;
    int grading = 0;
    bool operator==(const ClassProfile&) const = default;
};

// Result of the graded elimination: cancelled pairs a -> theta^k b and surviving free generators.
struct ThetaReduction {
    struct Pair { int a, b, k; };
    std::vector<Pair> pairs;
    std::vector<int> free_gens;
    ThetaModule module;
    // tracked elements, coordinates in the final basis
    std::vector<Bits> elements;
    std::vector<int> element_grading;
};

inline ThetaReduction theta_reduce(const ThetaComplex& t, const std::vector<std::pair<Bits, int>>& track = {}) {
    const std::size_t n = t.size();
    ThetaMatrix m(t);
    ThetaReduction out;
    for (auto& [v, g] : track) {
        out.elements.push_back(v);
        out.element_grading.push_back(g);
    }
    std::vector<bool> alive(n, true);
    int kmax = 1;
    if (n) {
        auto [lo, hi] = std::minmax_element(t.gr.begin(), t.gr.end());
        kmax = *hi - *lo + 2;
    }
    auto kof = [&](std::size_t a, std::size_t b) { return t.gr[a] + 1 - t.gr[b]; };
    for (int k = 0; k <= kmax; ++k) {
        bool progress = true;
        while (progress) {
            progress = false;
            for (std::size_t a = 0; a < n; ++a) {
                if (!alive[a]) continue;
                std::size_t b = Bits::npos;
                for (auto r = m.cols[a].find_first(); r != Bits::npos; r = m.cols[a].find_next(r))
                    if (r != a && kof(a, r) == k) { b = r; break; }
                if (b == Bits::npos) continue;
                progress = true;
                // make column a equal to {b}:  b <- b + theta^j r
                Bits others = m.cols[a];
                others.reset(b);
                for (auto r = others.find_first(); r != Bits::npos; r = others.find_next(r)) {
                    m.addcol(b, r);
                    m.addrow(r, b);
                    for (auto& v : out.elements)
                        if (v.test(b)) v.flip(r);
                }
                // clear row b except a:  c <- c + theta^j a
                Bits users = m.rows[b];
                users.reset(a);
                for (auto c = users.find_first(); c != Bits::npos; c = users.find_next(c)) {
                    m.addcol(c, a);
                    m.addrow(a, c);
                    for (auto& v : out.elements)
                        if (v.test(c)) v.flip(a);
                }
                if (m.cols[b].any() || m.rows[a].any()) throw std::runtime_error("theta reduction: D^2 != 0");
                alive[a] = alive[b] = false;
                out.pairs.push_back({static_cast<int>(a), static_cast<int>(b), k});
            }
        }
    }
    for (std::size_t x = 0; x < n; ++x)
        if (alive[x]) {
            if (m.cols[x].any() || m.rows[x].any()) throw std::runtime_error("theta reduction incomplete");
            out.free_gens.push_back(static_cast<int>(x));
            out.module.free.push_back({t.sector(static_cast<int>(x)), t.gr[x]});
        }
    for (auto& p : out.pairs)
        if (p.k > 0) out.module.torsion.push_back({t.sector(p.b), t.gr[p.b], p.k});
    std::sort(out.module.free.begin(), out.module.free.end());
    std::sort(out.module.torsion.begin(), out.module.torsion.end());
    return out;
}

inline ThetaModule theta_homology(const ThetaComplex& t) { return theta_reduce(t).module; }

inline bool is_theta_cycle(const ThetaComplex& t, const Bits& v, int g) {
    ThetaMatrix m(t);
    Bits acc(t.size());
    for (auto a = v.find_first(); a != Bits::npos; a = v.find_next(a)) {
        if (t.gr[a] > g) return false;  // negative theta power
        acc ^= m.cols[a];
    }
    return acc.none();
}

// Profile of the class of a homogeneous cocycle (coordinates carry theta^(g - gr)).
inline ClassProfile class_profile(const ThetaComplex& t, const Bits& v, int g) {
    if (!is_theta_cycle(t, v, g)) throw std::runtime_error("element is not a cocycle");
    auto red = theta_reduce(t, {{v, g}});
    const Bits& w = red.elements[0];
    ClassProfile p;
    p.grading = g;
    int sector = -1;
    for (auto x = v.find_first(); x != Bits::npos; x = v.find_next(x)) sector = t.sector(static_cast<int>(x));
    p.sector = sector;
    int div = INT_MAX;
    for (auto& pr : red.pairs) {
        if (w.test(pr.a)) throw std::runtime_error("cocycle has a component on a non-cycle");
        if (w.test(pr.b)) {
            const int e = g - t.gr[pr.b];
            if (e < pr.k) {
                p.nonzero = true;
                div = std::min(div, e);
            }
        }
    }
    for (int x : red.free_gens)
        if (w.test(x)) {
            p.nonzero = true;
            p.theta_torsion = false;
            div = std::min(div, g - t.gr[x]);
        }
    p.divisibility = p.nonzero ? div : -1;
    int minbottom = INT_MAX;
    for (auto& f : red.module.free)
        if (f.spinc == sector) minbottom = std::min(minbottom, f.bottom);
    if (minbottom != INT_MAX) p.delta = g - minbottom;
    return p;
}

// Gradings gamma with an element that is neither theta-divisible nor theta-torsion.
inline std::vector<int> qualifying_gradings(const ThetaModule& m, int sector) {
    std::set<int> bottoms;
    int minfree = INT_MAX;
    for (auto& f : m.free)
        if (f.spinc == sector) {
            bottoms.insert(f.bottom);
            minfree = std::min(minfree, f.bottom);
        }
    for (auto& t : m.torsion)
        if (t.spinc == sector) bottoms.insert(t.bottom);
    std::vector<int> q;
    for (int b : bottoms)
        if (b >= minfree) q.push_back(b);
    return q;
}

inline int v_tau(const ThetaModule& m, int sector) {
    auto q = qualifying_gradings(m, sector);
    if (q.empty()) throw std::runtime_error("no free tower in sector");
    return q.back() - q.front();
}

// ---------------------------------------------------------------------------------------------
// Direct finite-dimensional linear algebra in a fixed total grading.

namespace detail {

struct GradedSpace {
    std::vector<std::pair<int, int>> basis;  // (generator, theta power)
    std::map<std::pair<int, int>, std::size_t> index;
};

inline GradedSpace graded_space(const ThetaComplex& t, int gamma, int sector) {
    GradedSpace s;
    for (std::size_t x = 0; x < t.size(); ++x) {
        if (t.sector(static_cast<int>(x)) != sector) continue;
        const int p = gamma - t.gr[x];
        if (p < 0) continue;
        s.index[{static_cast<int>(x), p}] = s.basis.size();
        s.basis.push_back({static_cast<int>(x), p});
    }
    return s;
}

// images of basis vectors of `src` under D, as vectors in `dst`
inline std::vector<Bits> d_images(const ThetaComplex& t, const GradedSpace& src, const GradedSpace& dst) {
    std::vector<Bits> img;
    for (auto [x, p] : src.basis) {
        Bits b(dst.basis.size());
        auto put = [&](int y, int q) {
            auto it = dst.index.find({y, q});
            if (it == dst.index.end()) throw std::runtime_error("graded space mismatch");
            b.flip(it->second);
        };
        for (int y : t.delta[x]) put(y, p);
        if (t.tau[x] != x) {
            put(x, p + 1);
            put(t.tau[x], p + 1);
        }
        img.push_back(b);
    }
    return img;
}

// kernel basis of the linear map given by images of basis vectors (domain dimension = imgs.size())
inline std::vector<Bits> kernel_basis(const std::vector<Bits>& imgs, std::size_t target_dim) {
    const std::size_t n = imgs.size();
    std::vector<Bits> rows = imgs, track;
    for (std::size_t i = 0; i < n; ++i) {
        Bits e(n);
        e.set(i);
        track.push_back(e);
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < target_dim && rank < n; ++col) {
        std::size_t p = rank;
        while (p < n && !rows[p].test(col)) ++p;
        if (p == n) continue;
        std::swap(rows[p], rows[rank]);
        std::swap(track[p], track[rank]);
        for (std::size_t r = 0; r < n; ++r)
            if (r != rank && rows[r].test(col)) {
                rows[r] ^= rows[rank];
                track[r] ^= track[rank];
            }
        ++rank;
    }
    return std::vector<Bits>(track.begin() + static_cast<long>(rank), track.end());
}

}  // namespace detail

// dim_F2 of H(C[theta], D) at total grading gamma in a sector, computed directly.
inline int direct_dim(const ThetaComplex& t, int sector, int gamma) {
    auto v0 = detail::graded_space(t, gamma - 1, sector);
    auto v1 = detail::graded_space(t, gamma, sector);
    auto v2 = detail::graded_space(t, gamma + 1, sector);
    auto in = detail::d_images(t, v0, v1);
    auto out = detail::d_images(t, v1, v2);
    return static_cast<int>(v1.basis.size() - f2_rank(out) - f2_rank(in));
}

// E_r^p in total grading gamma: Z_r^p / (Z_{r-1}^{p+1} + D Z_{r-1}^{p-r+1}).
inline int spectral_dim(const ThetaComplex& t, int sector, int gamma, int p, int r) {
    using namespace detail;
    auto zspace = [&](int g, int pp, int rr) {
        // {c in F_pp(g) : D c in F_{pp+rr}(g+1)} as vectors in graded_space(g)
        auto vs = graded_space(t, g, sector);
        auto vt = graded_space(t, g + 1, sector);
        std::vector<std::size_t> dom;
        for (std::size_t i = 0; i < vs.basis.size(); ++i)
            if (vs.basis[i].second >= std::max(pp, 0)) dom.push_back(i);
        auto imgs = d_images(t, vs, vt);
        std::vector<Bits> low;  // components of D c below filtration pp+rr
        for (auto i : dom) {
            Bits b(vt.basis.size());
            for (auto j = imgs[i].find_first(); j != Bits::npos; j = imgs[i].find_next(j))
                if (vt.basis[j].second < pp + rr) b.set(j);
            low.push_back(b);
        }
        auto ker = kernel_basis(low, vt.basis.size());
        std::vector<Bits> out;
        for (auto& k : ker) {
            Bits c(vs.basis.size());
            for (auto j = k.find_first(); j != Bits::npos; j = k.find_next(j)) c.set(dom[j]);
            out.push_back(c);
        }
        return std::make_pair(out, vs);
    };
    auto [z, vs] = zspace(gamma, p, r);
    auto [zhi, _a] = zspace(gamma, p + 1, r - 1);
    auto [zlow, vprev] = zspace(gamma - 1, p - r + 1, r - 1);
    auto imgs = d_images(t, vprev, vs);
    std::vector<Bits> denom = zhi;
    for (auto& c : zlow) {
        Bits b(vs.basis.size());
        for (auto i = c.find_first(); i != Bits::npos; i = c.find_next(i)) b ^= imgs[i];
        denom.push_back(b);
    }
    return static_cast<int>(f2_rank(z) - f2_rank(denom));
}

struct PageTable {
    int r = 0;  // 0 encodes E_infinity
    std::map<std::pair<int, int>, int> dims;  // (p, gamma) -> dim, within a window
};

inline int grading_span(const ThetaComplex& t) {
    if (!t.size()) return 0;
    auto [lo, hi] = std::minmax_element(t.gr.begin(), t.gr.end());
    return *hi - *lo;
}

inline std::vector<PageTable> spectral_pages(const ThetaComplex& t, int sector, int r_max, int window) {
    std::vector<PageTable> pages;
    int lo = INT_MAX;
    for (std::size_t x = 0; x < t.size(); ++x)
        if (t.sector(static_cast<int>(x)) == sector) lo = std::min(lo, t.gr[x]);
    if (lo == INT_MAX) return pages;
    const int rinf = grading_span(t) + 3;
    auto fill = [&](int r) {
        PageTable pt;
        pt.r = r == rinf ? 0 : r;
        for (int gamma = lo; gamma <= lo + window; ++gamma)
            for (int p = 0; p <= gamma - lo; ++p) {
                int d = spectral_dim(t, sector, gamma, p, r);
                if (d) pt.dims[{p, gamma}] = d;
            }
        pages.push_back(pt);
    };
    for (int r = 1; r <= r_max; ++r) fill(r);
    fill(rinf);
    return pages;
}

}  // namespace bdc
