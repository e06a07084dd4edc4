#pragma once
// F2 chain complexes with an involution, plus plain F2 rank utilities.

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace bdc {

using Bits = boost::dynamic_bitset<>;

// Rank over F2 of the given row vectors (destroys nothing; copies).
inline std::size_t f2_rank(std::vector<Bits> rows) {
    std::size_t rank = 0;
    if (rows.empty()) return 0;
    const std::size_t n = rows[0].size();
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t p = rank;
        while (p < rows.size() && !rows[p].test(col)) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank && rows[r].test(col)) rows[r] ^= rows[rank];
        ++rank;
    }
    return rank;
}

struct GenInfo {
    int spinc = 0;
    int grading = 0;
    int tau = 0;  // index of tau-image
};

// Chain complex: d maps x to the sum of d[x]; d lowers grading by one.
struct FloerComplex {
    std::vector<GenInfo> gens;
    std::vector<std::vector<int>> d;
    std::map<int, int> period;  // spinc -> grading period (absent or 0: integer graded)

    std::size_t size() const { return gens.size(); }

    int period_of(int spinc) const {
        auto it = period.find(spinc);
        return it == period.end() ? 0 : it->second;
    }
    int shift(int spinc, int g, int by) const {
        const int p = period_of(spinc);
        return p > 0 ? (((g + by) % p) + p) % p : g + by;
    }

    std::vector<Bits> matrix_rows() const {  // row x = d(x)
        std::vector<Bits> m(size(), Bits(size()));
        for (std::size_t x = 0; x < size(); ++x)
            for (int y : d[x]) m[x].flip(y);
        return m;
    }
};

struct ComplexCheck {
    bool d_squared_zero = true;
    bool tau_involution = true;
    bool tau_chain_map = true;
    bool grading_drop = true;
    bool tau_grading = true;
    bool ok() const { return d_squared_zero && tau_involution && tau_chain_map && grading_drop && tau_grading; }
};

inline ComplexCheck check_complex(const FloerComplex& c) {
    ComplexCheck r;
    const std::size_t n = c.size();
    auto m = c.matrix_rows();
    for (std::size_t x = 0; x < n; ++x) {
        Bits dd(n);
        for (auto y = m[x].find_first(); y != Bits::npos; y = m[x].find_next(y)) {
            dd ^= m[y];
            if (c.gens[y].grading != c.shift(c.gens[x].spinc, c.gens[x].grading, -1) || c.gens[y].spinc != c.gens[x].spinc)
                r.grading_drop = false;
        }
        if (dd.any()) r.d_squared_zero = false;
        const int tx = c.gens[x].tau;
        if (tx < 0 || static_cast<std::size_t>(tx) >= n || c.gens[tx].tau != static_cast<int>(x))
            r.tau_involution = false;
        else {
            if (c.gens[tx].grading != c.gens[x].grading) r.tau_grading = false;
            Bits lhs(n);  // tau d x
            for (auto y = m[x].find_first(); y != Bits::npos; y = m[x].find_next(y)) lhs.flip(c.gens[y].tau);
            if (lhs != m[tx]) r.tau_chain_map = false;
        }
    }
    return r;
}

// Ranks of H_*(C, d) by (spinc, grading).
inline std::map<std::pair<int, int>, int> homology_ranks(const FloerComplex& c) {
    std::map<std::pair<int, int>, std::vector<int>> bydeg;
    for (std::size_t x = 0; x < c.size(); ++x) bydeg[{c.gens[x].spinc, c.gens[x].grading}].push_back(static_cast<int>(x));
    auto m = c.matrix_rows();
    std::map<std::pair<int, int>, int> out;
    auto rank_of = [&](const std::vector<int>& src, const std::vector<int>& dst) -> std::size_t {
        if (src.empty() || dst.empty()) return 0;
        std::map<int, std::size_t> pos;
        for (std::size_t i = 0; i < dst.size(); ++i) pos[dst[i]] = i;
        std::vector<Bits> rows;
        for (int x : src) {
            Bits b(dst.size());
            for (auto y = m[x].find_first(); y != Bits::npos; y = m[x].find_next(y)) {
                auto it = pos.find(static_cast<int>(y));
                if (it != pos.end()) b.flip(it->second);
            }
            rows.push_back(b);
        }
        return f2_rank(rows);
    };
    for (auto& [key, xs] : bydeg) {
        auto [s, g] = key;
        static const std::vector<int> none;
        auto lo = bydeg.find({s, c.shift(s, g, -1)});
        auto hi = bydeg.find({s, c.shift(s, g, 1)});
        const std::size_t rout = rank_of(xs, lo == bydeg.end() ? none : lo->second);
        const std::size_t rin = hi == bydeg.end() ? 0 : rank_of(hi->second, xs);
        const int h = static_cast<int>(xs.size() - rout - rin);
        if (h) out[key] = h;
    }
    return out;
}

inline int total_rank(const FloerComplex& c) {
    int t = 0;
    for (auto& [k, v] : homology_ranks(c)) t += v;
    return t;
}

}  // namespace bdc
