#pragma once
// Domains on a Heegaard diagram: the corner-boundary system, periodic domains, weak
// admissibility, Spin^c classes and the index formula.

#include "bdc/cover.hpp"

#include <limits>
#include <numeric>

namespace bdc {

using Domain = std::vector<long long>;  // multiplicity per region (z region included, kept 0)

// Linear system in the non-basepoint regions: one row per intersection point, value of
// d(d_alpha D) at that point.
struct DomainSystem {
    const HeegaardDiagram* hd = nullptr;
    std::vector<int> var_region;   // variable -> region
    std::vector<int> region_var;   // region -> variable or -1 (basepoint)
    IntMatrix rows;                // points x variables
    IntegerSolver solver;
    std::vector<Domain> periodic;  // lattice basis

    explicit DomainSystem(const HeegaardDiagram& h) : hd(&h) {
        region_var.assign(h.num_regions, -1);
        for (int r = 0; r < h.num_regions; ++r)
            if (r != h.z_region) {
                region_var[r] = static_cast<int>(var_region.size());
                var_region.push_back(r);
            }
        std::map<int, int> point_of_vertex;
        for (int i = 0; i < static_cast<int>(h.points.size()); ++i) point_of_vertex[h.points[i].vertex] = i;
        rows.assign(h.points.size(), std::vector<long long>(var_region.size(), 0));
        auto add = [&](int point, int region, long long c) {
            if (point < 0 || region_var[region] < 0) return;
            rows[point][region_var[region]] += c;
        };
        for (auto& s : h.alpha_segments) {
            auto ih = point_of_vertex.find(s.head), it = point_of_vertex.find(s.tail);
            const int ph = ih == point_of_vertex.end() ? -1 : ih->second;
            const int pt = it == point_of_vertex.end() ? -1 : it->second;
            add(ph, s.left, 1);
            add(ph, s.right, -1);
            add(pt, s.left, -1);
            add(pt, s.right, 1);
        }
        solver = IntegerSolver(rows, var_region.size());
        for (auto& k : solver.kernel()) periodic.push_back(to_domain(k));
    }

    Domain to_domain(const std::vector<mpz_class>& v) const {
        Domain d(hd->num_regions, 0);
        for (std::size_t i = 0; i < v.size(); ++i) d[var_region[i]] = v[i].get_si();
        return d;
    }
    std::vector<long long> corner_data(const std::vector<int>& x, const std::vector<int>& y) const {
        std::vector<long long> b(rows.size(), 0);
        for (int p : y) b[p] += 1;
        for (int p : x) b[p] -= 1;
        return b;
    }
    // some domain from x to y with n_z = 0
    std::optional<Domain> connecting(const std::vector<int>& x, const std::vector<int>& y) const {
        auto s = solver.solve(corner_data(x, y));
        if (!s) return std::nullopt;
        return to_domain(*s);
    }
    bool connects(const Domain& d, const std::vector<int>& x, const std::vector<int>& y) const {
        if (d[hd->z_region] != 0) return false;
        auto b = corner_data(x, y);
        for (std::size_t p = 0; p < rows.size(); ++p) {
            long long s = 0;
            for (std::size_t j = 0; j < var_region.size(); ++j) s += rows[p][j] * d[var_region[j]];
            if (s != b[p]) return false;
        }
        return true;
    }
};

inline std::vector<Domain> periodic_domain_lattice(const HeegaardDiagram& h) { return DomainSystem(h).periodic; }

// four times the index
inline long long maslov4(const HeegaardDiagram& h, const Domain& d, const std::vector<int>& x, const std::vector<int>& y) {
    long long s = 0;
    for (int r = 0; r < h.num_regions; ++r) s += d[r] * (4LL * h.region_chi[r] - h.region_corners[r]);
    for (auto* t : {&x, &y})
        for (int p : *t)
            for (int r : h.points[p].sectors) s += d[r];
    return s;
}

inline long long maslov_index(const HeegaardDiagram& h, const Domain& d, const std::vector<int>& x, const std::vector<int>& y) {
    const long long m4 = maslov4(h, d, x, y);
    if (m4 % 4 != 0) throw std::logic_error("non-integral index");
    return m4 / 4;
}

// ---------------------------------------------------------------------------------------------
// Exact Fourier-Motzkin: find q with A q >= 0 (rows), sum(A q) = 1, or report none.

namespace detail {

struct Ineq {
    std::vector<mpq_class> a;  // a . q + c >= 0
    mpq_class c;
};

inline void normalize(Ineq& e) {
    mpq_class m = 0;
    for (auto& v : e.a)
        if (v != 0) { m = abs(v); break; }
    if (m == 0) m = abs(e.c);
    if (m == 0) return;
    for (auto& v : e.a) v /= m;
    e.c /= m;
}

// feasibility of a system of inequalities; returns a rational point
inline std::optional<std::vector<mpq_class>> fourier_motzkin(std::vector<Ineq> sys, std::size_t nvars) {
    std::vector<std::vector<Ineq>> stages;
    for (std::size_t v = nvars; v-- > 0;) {
        stages.push_back(sys);
        std::vector<Ineq> pos, neg, next;
        for (auto& e : sys) {
            if (e.a[v] > 0) pos.push_back(e);
            else if (e.a[v] < 0) neg.push_back(e);
            else next.push_back(e);
        }
        for (auto& p : pos)
            for (auto& q : neg) {
                Ineq r;
                r.a.resize(nvars);
                const mpq_class fp = -q.a[v], fq = p.a[v];
                for (std::size_t i = 0; i < nvars; ++i) r.a[i] = fp * p.a[i] + fq * q.a[i];
                r.c = fp * p.c + fq * q.c;
                r.a[v] = 0;
                normalize(r);
                next.push_back(r);
            }
        std::sort(next.begin(), next.end(), [](const Ineq& a, const Ineq& b) {
            if (a.a != b.a) return a.a < b.a;
            return a.c < b.c;
        });
        next.erase(std::unique(next.begin(), next.end(),
                               [](const Ineq& a, const Ineq& b) { return a.a == b.a && a.c == b.c; }),
                   next.end());
        sys = next;
    }
    for (auto& e : sys)
        if (e.c < 0) return std::nullopt;
    std::vector<mpq_class> q(nvars, 0);
    for (std::size_t v = 0; v < nvars; ++v) {
        const auto& st = stages[nvars - 1 - v];
        std::optional<mpq_class> lo, hi;
        for (auto& e : st) {
            if (e.a[v] == 0) continue;
            mpq_class rest = e.c;
            for (std::size_t i = 0; i < v; ++i) rest += e.a[i] * q[i];
            const mpq_class bound = -rest / e.a[v];
            if (e.a[v] > 0) { if (!lo || bound > *lo) lo = bound; }
            else if (!hi || bound < *hi) hi = bound;
        }
        if (lo && hi) q[v] = (*lo + *hi) / 2;
        else if (lo) q[v] = *lo;
        else if (hi) q[v] = *hi;
    }
    return q;
}

}  // namespace detail

struct AdmissibilityResult {
    bool admissible = true;
    Domain certificate;  // nonnegative nonzero periodic domain when not admissible
};

inline AdmissibilityResult weak_admissibility(const HeegaardDiagram& h) {
    AdmissibilityResult res;
    const auto lat = periodic_domain_lattice(h);
    const std::size_t r = lat.size();
    if (r == 0) return res;
    std::vector<detail::Ineq> sys;
    detail::Ineq total{std::vector<mpq_class>(r, 0), -1};
    for (int reg = 0; reg < h.num_regions; ++reg) {
        detail::Ineq e{std::vector<mpq_class>(r), 0};
        bool nz = false;
        for (std::size_t i = 0; i < r; ++i) {
            e.a[i] = static_cast<long>(lat[i][reg]);
            total.a[i] += e.a[i];
            nz |= lat[i][reg] != 0;
        }
        if (nz) sys.push_back(e);
    }
    // sum = 1 as two inequalities
    detail::Ineq neg = total;
    for (auto& v : neg.a) v = -v;
    neg.c = 1;
    sys.push_back(total);
    sys.push_back(neg);
    auto q = detail::fourier_motzkin(sys, r);
    if (!q) return res;
    mpz_class den = 1;
    for (auto& v : *q) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    Domain d(h.num_regions, 0);
    for (std::size_t i = 0; i < r; ++i) {
        mpz_class k = mpz_class((*q)[i] * den);
        for (int reg = 0; reg < h.num_regions; ++reg) d[reg] += k.get_si() * lat[i][reg];
    }
    long long g = 0;
    for (auto v : d) g = std::gcd(g, std::llabs(v));
    if (g > 1)
        for (auto& v : d) v /= g;
    res.admissible = false;
    res.certificate = d;
    return res;
}

// ---------------------------------------------------------------------------------------------
// Spin^c classes and relative gradings

struct GradedGenerators {
    std::vector<int> spinc;          // class id per generator (id = its representative)
    std::vector<long long> grading;  // relative grading, min in class = 0 (reduced mod period)
    std::map<int, long long> period; // class -> gcd of periodic indices (0 = exact)
    std::vector<Domain> from_rep;    // a domain from the class representative to the generator

    Domain connecting(int x, int y) const {
        Domain d = from_rep[y];
        for (std::size_t r = 0; r < d.size(); ++r) d[r] -= from_rep[x][r];
        return d;
    }
};

inline GradedGenerators grade_generators(const HeegaardDiagram& h, const DomainSystem& ds, const Generators& g) {
    GradedGenerators out;
    const int N = static_cast<int>(g.tuples.size());
    out.spinc.assign(N, -1);
    out.grading.assign(N, 0);
    out.from_rep.assign(N, {});
    std::vector<int> reps;
    for (int y = 0; y < N; ++y) {
        for (int x : reps) {
            auto d = ds.connecting(g.tuples[x], g.tuples[y]);
            if (!d) continue;
            out.spinc[y] = x;
            out.grading[y] = -maslov_index(h, *d, g.tuples[x], g.tuples[y]);
            out.from_rep[y] = *d;
            break;
        }
        if (out.spinc[y] >= 0) continue;
        reps.push_back(y);
        out.spinc[y] = y;
        out.from_rep[y] = Domain(h.num_regions, 0);
        long long per = 0;
        for (auto& p : ds.periodic) per = std::gcd(per, std::llabs(maslov_index(h, p, g.tuples[y], g.tuples[y])));
        out.period[y] = per;
    }
    for (int x : reps) {
        const long long per = out.period[x];
        long long lo = std::numeric_limits<long long>::max();
        for (int y = 0; y < N; ++y) {
            if (out.spinc[y] != x) continue;
            if (per > 0) out.grading[y] = ((out.grading[y] % per) + per) % per;
            lo = std::min(lo, out.grading[y]);
        }
        for (int y = 0; y < N; ++y)
            if (out.spinc[y] == x) out.grading[y] -= lo;
    }
    return out;
}

}  // namespace bdc
