#pragma once
// Exact integer / rational linear algebra helpers (GMP backed).

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bdc {

using IntMatrix = std::vector<std::vector<long long>>;

// Fraction-free Bareiss determinant.
inline mpz_class determinant(const IntMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(m[i][j]);
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]);
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

// Signature of a symmetric integer matrix by exact congruence diagonalisation.
inline int signature(const IntMatrix& m) {
    const std::size_t n = m.size();
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(m[i][j]);
    int sig = 0;
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t p = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && a[i][i] != 0) { p = i; break; }
        if (p == n) {
            // all remaining diagonal zero: find an off-diagonal pair and mix
            std::size_t r = n, c = n;
            for (std::size_t i = 0; i < n && r == n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && i != j && a[i][j] != 0) { r = i; c = j; break; }
            if (r == n) break;
            // row/col r += row/col c
            for (std::size_t k = 0; k < n; ++k) a[r][k] += a[c][k];
            for (std::size_t k = 0; k < n; ++k) a[k][r] += a[k][c];
            p = r;
        }
        done[p] = true;
        const mpq_class piv = a[p][p];
        sig += piv > 0 ? 1 : -1;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || a[i][p] == 0) continue;
            mpq_class f = a[i][p] / piv;
            for (std::size_t k = 0; k < n; ++k) a[i][k] -= f * a[p][k];
            for (std::size_t k = 0; k < n; ++k) a[k][i] -= f * a[k][p];
        }
    }
    return sig;
}

// Column-style Hermite reduction:  A * U = H with U unimodular, H in column echelon form.
// Used for integer solvability and integer kernels of sparse-ish incidence systems.
class IntegerSolver {
public:
    IntegerSolver() = default;
    explicit IntegerSolver(const std::vector<std::vector<long long>>& rows, std::size_t ncols)
        : rows_(rows.size()), cols_(ncols) {
        h_.assign(cols_, std::vector<mpz_class>(rows_));
        u_.assign(cols_, std::vector<mpz_class>(cols_));
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) h_[c][r] = static_cast<long>(rows[r][c]);
        for (std::size_t c = 0; c < cols_; ++c) u_[c][c] = 1;
        reduce();
    }

    std::size_t rank() const { return pivots_.size(); }
    std::size_t ncols() const { return cols_; }

    // Integer solution of A x = b, if any.
    std::optional<std::vector<mpz_class>> solve(const std::vector<long long>& b) const {
        std::vector<mpz_class> rhs(rows_);
        for (std::size_t r = 0; r < rows_; ++r) rhs[r] = static_cast<long>(b[r]);
        std::vector<mpz_class> y(pivots_.size());
        for (std::size_t k = 0; k < pivots_.size(); ++k) {
            const std::size_t pr = pivots_[k];
            const mpz_class& d = h_[k][pr];
            if (!mpz_divisible_p(rhs[pr].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
            y[k] = rhs[pr] / d;
            if (y[k] != 0)
                for (std::size_t r = 0; r < rows_; ++r)
                    if (h_[k][r] != 0) rhs[r] -= y[k] * h_[k][r];
        }
        for (std::size_t r = 0; r < rows_; ++r)
            if (rhs[r] != 0) return std::nullopt;
        std::vector<mpz_class> x(cols_);
        for (std::size_t k = 0; k < pivots_.size(); ++k)
            if (y[k] != 0)
                for (std::size_t c = 0; c < cols_; ++c) x[c] += y[k] * u_[k][c];
        return x;
    }

    // Lattice basis of the integer kernel.
    std::vector<std::vector<mpz_class>> kernel() const {
        std::vector<std::vector<mpz_class>> out;
        for (std::size_t k = pivots_.size(); k < cols_; ++k) out.push_back(u_[k]);
        return out;
    }

private:
    void addcol(std::size_t dst, std::size_t src, const mpz_class& f) {
        for (std::size_t r = 0; r < rows_; ++r)
            if (h_[src][r] != 0) h_[dst][r] -= f * h_[src][r];
        for (std::size_t c = 0; c < cols_; ++c)
            if (u_[src][c] != 0) u_[dst][c] -= f * u_[src][c];
    }
    void reduce() {
        std::size_t next = 0;
        for (std::size_t r = 0; r < rows_ && next < cols_; ++r) {
            // gcd-combine all columns >= next on row r into column `next`
            for (;;) {
                std::size_t best = cols_;
                for (std::size_t c = next; c < cols_; ++c)
                    if (h_[c][r] != 0 && (best == cols_ || abs(h_[c][r]) < abs(h_[best][r]))) best = c;
                if (best == cols_) break;
                std::swap(h_[best], h_[next]);
                std::swap(u_[best], u_[next]);
                bool clean = true;
                for (std::size_t c = next + 1; c < cols_; ++c) {
                    if (h_[c][r] == 0) continue;
                    mpz_class q;
                    mpz_fdiv_q(q.get_mpz_t(), h_[c][r].get_mpz_t(), h_[next][r].get_mpz_t());
                    addcol(c, next, q);
                    if (h_[c][r] != 0) clean = false;
                }
                if (clean) break;
            }
            if (next < cols_ && h_[next][r] != 0) {
                if (h_[next][r] < 0) {
                    for (auto& v : h_[next]) v = -v;
                    for (auto& v : u_[next]) v = -v;
                }
                pivots_.push_back(r);
                ++next;
            }
        }
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::vector<mpz_class>> h_;  // columns of H
    std::vector<std::vector<mpz_class>> u_;  // columns of U (as rows here)
    std::vector<std::size_t> pivots_;
};

}  // namespace bdc
