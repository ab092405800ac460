#pragma once

// Brute-force ideal membership: is p = Σ q_s g_s with deg(q_s g_s) <= bound?
// Decided by exact Gaussian elimination over the coefficients of the q_s.

#include "poisenv/polynomial.hpp"

#include <map>
#include <vector>

namespace testsupport {

using namespace poisenv;

inline std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned degree) {
    std::vector<Monomial> out;
    std::vector<std::uint32_t> e(nvars, 0);
    auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
        if (i == nvars) {
            out.emplace_back(e);
            return;
        }
        for (unsigned k = 0; k <= left; ++k) {
            e[i] = k;
            self(self, i + 1, left - k);
        }
        e[i] = 0;
    };
    rec(rec, 0, degree);
    return out;
}

inline bool brute_force_member(const Polynomial& p, const std::vector<Polynomial>& gens, unsigned bound) {
    if (p.is_zero()) return true;
    std::size_t nvars = p.num_vars();
    // Columns: m * g_s for every monomial m with deg(m) + deg(g_s) <= bound.
    std::vector<std::map<Monomial, Rational>> columns;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        int dg = g.total_degree();
        if (dg > static_cast<int>(bound)) continue;
        for (const auto& m : monomials_up_to(nvars, bound - static_cast<unsigned>(dg))) {
            std::map<Monomial, Rational> col;
            for (const auto& t : g.terms()) col[t.monomial * m] = t.coeff;
            columns.push_back(std::move(col));
        }
    }
    std::map<Monomial, std::size_t> row_index;
    for (const auto& col : columns)
        for (const auto& [m, c] : col) row_index.emplace(m, 0);
    for (const auto& t : p.terms()) row_index.emplace(t.monomial, 0);
    std::size_t rows = 0;
    for (auto& [m, idx] : row_index) idx = rows++;

    // Augmented matrix [columns | p], row-reduced.
    std::size_t ncols = columns.size();
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(ncols + 1, 0));
    for (std::size_t c = 0; c < ncols; ++c)
        for (const auto& [m, v] : columns[c]) a[row_index[m]][c] = v;
    for (const auto& t : p.terms()) a[row_index[t.monomial]][ncols] = t.coeff;

    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < ncols && pivot_row < rows; ++c) {
        std::size_t r = pivot_row;
        while (r < rows && a[r][c] == 0) ++r;
        if (r == rows) continue;
        std::swap(a[r], a[pivot_row]);
        for (std::size_t k = 0; k < rows; ++k) {
            if (k == pivot_row || a[k][c] == 0) continue;
            Rational f = a[k][c] / a[pivot_row][c];
            for (std::size_t j = c; j <= ncols; ++j) a[k][j] -= f * a[pivot_row][j];
        }
        ++pivot_row;
    }
    // Consistent iff no row reads 0 = nonzero.
    for (std::size_t r = pivot_row; r < rows; ++r)
        if (a[r][ncols] != 0) return false;
    return true;
}

}  // namespace testsupport
