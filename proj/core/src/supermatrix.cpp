#include "hcx/supermatrix.hpp"

#include "hcx/error.hpp"

#include <bit>

namespace hcx {

bool SuperMatrix::is_even_homogeneous() const {
    for (size_t i = 0; i < rows(); ++i)
        for (size_t j = 0; j < cols(); ++j) {
            const Scalar& e = entries[i][j];
            if (e.is_zero())
                continue;
            auto p = e.parity();
            if (!p || *p != row_parity[i] + col_parity[j])
                return false;
        }
    return true;
}

Scalar scalar_det(const std::vector<std::vector<Scalar>>& m, const BaseRingPtr& ring) {
    size_t n = m.size();
    for (const auto& row : m)
        require(row.size() == n, "determinant of a non-square matrix");
    std::vector<std::vector<Scalar>> a = m;
    Scalar det = Scalar::constant(ring, 1);
    for (size_t c = 0; c < n; ++c) {
        size_t p = n;
        for (size_t r = c; r < n; ++r)
            if (!a[r][c].body().is_zero()) {
                p = r;
                break;
            }
        if (p == n) {
            // No invertible pivot in this column: the determinant has zero
            // body. Fall back to expansion over the remaining minor.
            std::vector<size_t> rows_left, cols_left;
            for (size_t r = c; r < n; ++r)
                rows_left.push_back(r);
            for (size_t cc = c; cc < n; ++cc)
                cols_left.push_back(cc);
            // Laplace expansion along the first remaining column.
            std::function<Scalar(std::vector<size_t>, std::vector<size_t>)> minor =
                [&](std::vector<size_t> rs, std::vector<size_t> cs) -> Scalar {
                if (rs.empty())
                    return Scalar::constant(ring, 1);
                Scalar acc(ring);
                size_t col = cs.front();
                std::vector<size_t> cs2(cs.begin() + 1, cs.end());
                for (size_t k = 0; k < rs.size(); ++k) {
                    const Scalar& e = a[rs[k]][col];
                    if (e.is_zero())
                        continue;
                    std::vector<size_t> rs2;
                    for (size_t t = 0; t < rs.size(); ++t)
                        if (t != k)
                            rs2.push_back(rs[t]);
                    Scalar sub = minor(rs2, cs2);
                    Scalar term = e * sub;
                    if (k % 2 == 1)
                        term = -term;
                    acc = acc + term;
                }
                return acc;
            };
            return det * minor(rows_left, cols_left);
        }
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det = det * a[c][c];
        Scalar inv = a[c][c].inverse();
        for (size_t r = c + 1; r < n; ++r) {
            if (a[r][c].is_zero())
                continue;
            Scalar f = a[r][c] * inv;
            for (size_t j = c; j < n; ++j)
                a[r][j] = a[r][j] - f * a[c][j];
        }
    }
    return det;
}

std::vector<std::vector<Scalar>> scalar_inverse(const std::vector<std::vector<Scalar>>& m,
                                                const BaseRingPtr& ring) {
    size_t n = m.size();
    std::vector<std::vector<Scalar>> a = m, inv(n, std::vector<Scalar>(n, Scalar(ring)));
    for (size_t i = 0; i < n; ++i)
        inv[i][i] = Scalar::constant(ring, 1);
    for (size_t c = 0; c < n; ++c) {
        size_t p = n;
        for (size_t r = c; r < n; ++r)
            if (!a[r][c].body().is_zero()) {
                p = r;
                break;
            }
        require(p != n, "matrix of even scalars is not invertible");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        Scalar f = a[c][c].inverse();
        for (size_t j = 0; j < n; ++j) {
            a[c][j] = f * a[c][j];
            inv[c][j] = f * inv[c][j];
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c].is_zero())
                continue;
            Scalar g = a[r][c];
            for (size_t j = 0; j < n; ++j) {
                a[r][j] = a[r][j] - g * a[c][j];
                inv[r][j] = inv[r][j] - g * inv[c][j];
            }
        }
    }
    return inv;
}

Scalar berezinian(const SuperMatrix& m, const BaseRingPtr& ring) {
    require(m.rows() == m.cols(), "Berezinian of a non-square supermatrix");
    require(m.is_even_homogeneous(), "Berezinian requires an even supermatrix");
    std::vector<size_t> ev, od;
    for (size_t i = 0; i < m.rows(); ++i)
        (m.row_parity[i] == Parity::Even ? ev : od).push_back(i);
    std::vector<size_t> cev, cod;
    for (size_t j = 0; j < m.cols(); ++j)
        (m.col_parity[j] == Parity::Even ? cev : cod).push_back(j);
    require(ev.size() == cev.size() && od.size() == cod.size(),
            "Berezinian requires matching parities of rows and columns");

    auto block = [&](const std::vector<size_t>& rs, const std::vector<size_t>& cs) {
        std::vector<std::vector<Scalar>> b(rs.size(), std::vector<Scalar>(cs.size(), Scalar(ring)));
        for (size_t i = 0; i < rs.size(); ++i)
            for (size_t j = 0; j < cs.size(); ++j)
                b[i][j] = m.at(rs[i], cs[j]);
        return b;
    };
    auto A = block(ev, cev), B = block(ev, cod), C = block(od, cev), D = block(od, cod);

    Scalar detD = scalar_det(D, ring);
    require(!detD.body().is_zero(), "odd-odd block of the supermatrix is not invertible");
    if (ev.empty())
        return detD.inverse();
    std::vector<std::vector<Scalar>> S = A;
    if (!od.empty()) {
        auto Dinv = scalar_inverse(D, ring);
        // S = A - B D^-1 C
        for (size_t i = 0; i < ev.size(); ++i)
            for (size_t j = 0; j < cev.size(); ++j) {
                Scalar acc(ring);
                for (size_t k = 0; k < od.size(); ++k)
                    for (size_t l = 0; l < od.size(); ++l)
                        acc = acc + B[i][k] * Dinv[k][l] * C[l][j];
                S[i][j] = S[i][j] - acc;
            }
    }
    return scalar_det(S, ring) * detD.inverse();
}

bool rees_member(const std::vector<std::pair<Scalar, int>>& terms, int m) {
    for (const auto& [coeff, level] : terms) {
        if (coeff.is_zero())
            continue;
        if (level > m)
            return false;
        if (coeff.nilpotent_order() < level)
            return false;
    }
    return true;
}

bool rees_member_scalar(const Scalar& s, const std::vector<size_t>& filtration_vars, int m) {
    for (const auto& [mask, c] : s.terms()) {
        for (size_t v : filtration_vars)
            require(c.den().degree_in(v) == 0,
                    "filtration variables may not appear in denominators");
        int order = std::popcount(mask);
        for (const auto& [mono, coeff] : c.num().terms()) {
            int level = 0;
            for (size_t v : filtration_vars)
                level += mono.exponent(v);
            if (level > m || order < level)
                return false;
        }
    }
    return true;
}

} // namespace hcx
