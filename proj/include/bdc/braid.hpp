#pragma once
// Braid words and classical invariants of their closures.

#include "bdc/exact.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bdc {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Letter {
    int index;  // 1 .. n-1
    int sign;   // +1 / -1
    bool operator==(const Letter&) const = default;
};

struct BraidWord {
    int strands = 1;
    std::vector<Letter> letters;

    bool operator==(const BraidWord&) const = default;

    int writhe() const {
        int e = 0;
        for (auto l : letters) e += l.sign;
        return e;
    }

    // permutation of strand positions (0-based): perm[i] = where position i ends up
    std::vector<int> permutation() const {
        std::vector<int> at(strands);  // at[pos] = strand currently at pos
        std::iota(at.begin(), at.end(), 0);
        for (auto l : letters) std::swap(at[l.index - 1], at[l.index]);
        std::vector<int> perm(strands);
        for (int pos = 0; pos < strands; ++pos) perm[at[pos]] = pos;
        return perm;
    }

    std::string str() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < letters.size(); ++i) {
            if (i) os << ' ';
            os << letters[i].sign * letters[i].index;
        }
        return os.str();
    }

    BraidWord inverse() const {
        BraidWord r{strands, {}};
        for (auto it = letters.rbegin(); it != letters.rend(); ++it) r.letters.push_back({it->index, -it->sign});
        return r;
    }
};

inline void check_word(const BraidWord& w) {
    if (w.strands < 1) throw InputError("strand count must be positive");
    for (auto l : w.letters)
        if (l.index < 1 || l.index >= w.strands || (l.sign != 1 && l.sign != -1))
            throw InputError("letter out of range: " + std::to_string(l.sign * l.index));
}

inline BraidWord parse_braid(const std::string& text, int strands = 0) {
    std::string s = text;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream is(s);
    std::string tok;
    BraidWord w;
    int maxabs = 0;
    while (is >> tok) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(tok, &used);
        } catch (...) {
            throw InputError("not an integer: '" + tok + "'");
        }
        if (used != tok.size()) throw InputError("not an integer: '" + tok + "'");
        if (v == 0) throw InputError("zero is not a braid letter");
        w.letters.push_back({static_cast<int>(std::labs(v)), v > 0 ? 1 : -1});
        maxabs = std::max<int>(maxabs, static_cast<int>(std::labs(v)));
    }
    if (strands > 0) {
        w.strands = strands;
    } else {
        if (w.letters.empty()) throw InputError("empty word needs an explicit strand count");
        w.strands = maxabs + 1;
    }
    check_word(w);
    return w;
}

inline int closure_components(const BraidWord& w) {
    auto p = w.permutation();
    std::vector<bool> seen(w.strands, false);
    int c = 0;
    for (int s = 0; s < w.strands; ++s) {
        if (seen[s]) continue;
        ++c;
        for (int x = s; !seen[x]; x = p[x]) seen[x] = true;
    }
    return c;
}

inline int self_linking(const BraidWord& w) { return w.writhe() - w.strands; }

inline BraidWord stabilize(const BraidWord& w, int sign) {
    BraidWord r = w;
    r.strands = w.strands + 1;
    r.letters.push_back({w.strands, sign > 0 ? 1 : -1});
    return r;
}

inline BraidWord concat(const BraidWord& a, const BraidWord& b) {
    if (a.strands != b.strands) throw InputError("strand mismatch");
    BraidWord r = a;
    r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
    return r;
}

// g w g^-1
inline BraidWord conjugate(const BraidWord& w, const BraidWord& g) {
    if (w.strands != g.strands) throw InputError("strand mismatch");
    return concat(concat(g, w), g.inverse());
}

// Seifert matrix of the canonical braid surface (one disk per strand, one band per letter).
// The surface sign is chosen so that the right-handed trefoil 1 1 1 has signature +2.
inline IntMatrix seifert_matrix(const BraidWord& w) {
    struct Band { int t, e; };
    struct Gen { int col; Band a, b; };
    std::vector<std::vector<Band>> cols(w.strands);
    for (std::size_t t = 0; t < w.letters.size(); ++t)
        cols[w.letters[t].index].push_back({static_cast<int>(t), w.letters[t].sign});
    std::vector<Gen> gens;
    for (int i = 1; i < w.strands; ++i)
        for (std::size_t k = 0; k + 1 < cols[i].size(); ++k) gens.push_back({i, cols[i][k], cols[i][k + 1]});
    const std::size_t m = gens.size();
    IntMatrix v(m, std::vector<long long>(m, 0));
    for (std::size_t x = 0; x < m; ++x) {
        const auto& g = gens[x];
        v[x][x] = -(g.a.e + g.b.e) / 2;
        for (std::size_t y = 0; y < m; ++y) {
            const auto& h = gens[y];
            if (h.col == g.col && h.a.t == g.b.t) {
                if (g.b.e > 0) v[x][y] = 1;
                else v[y][x] = -1;
            }
            if (h.col == g.col + 1) {
                if (g.a.t < h.a.t && h.a.t < g.b.t && g.b.t < h.b.t) v[x][y] += 1;
                if (h.a.t < g.a.t && g.a.t < h.b.t && h.b.t < g.b.t) v[y][x] -= 1;
            }
        }
    }
    return v;
}

struct ClassicalInvariants {
    int writhe = 0;
    int self_linking = 0;
    int components = 1;
    int sigma = 0;
    long long determinant = 1;
};

inline IntMatrix symmetrize(const IntMatrix& v) {
    IntMatrix s = v;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) s[i][j] = v[i][j] + v[j][i];
    return s;
}

inline ClassicalInvariants classical_invariants(const BraidWord& w) {
    ClassicalInvariants ci;
    ci.writhe = w.writhe();
    ci.self_linking = self_linking(w);
    ci.components = closure_components(w);
    const auto s = symmetrize(seifert_matrix(w));
    ci.sigma = -signature(s);
    bool split = false;
    for (int i = 1; i < w.strands; ++i) {
        bool used = false;
        for (auto l : w.letters) used |= (l.index == i);
        split |= !used;
    }
    ci.determinant = split ? 0 : mpz_class(abs(determinant(s))).get_si();
    return ci;
}

}  // namespace bdc
