#include "hcx/linalg.hpp"

#include "hcx/error.hpp"

namespace hcx {

Rational to_point_field(const RatFun& c, const Mode& mode) {
    require(mode.point, "point-mode lowering requested in generic mode");
    RatFun v = c.evaluate_partial(mode.assignment);
    require(v.is_constant(), "unspecialized even variables in point mode");
    return v.constant_value();
}

std::vector<Scalar> theta_times(uint64_t mask, const std::vector<Scalar>& v) {
    std::vector<Scalar> r;
    r.reserve(v.size());
    for (const auto& s : v) {
        Scalar t(s.ring());
        for (const auto& [m, c] : s.terms()) {
            int sign = grassmann_merge_sign(mask, m);
            if (sign == 0)
                continue;
            t.set_term(mask | m, sign > 0 ? c : -c);
        }
        r.push_back(std::move(t));
    }
    return r;
}

namespace {

template <class F>
size_t flat_rank_impl(const std::vector<std::vector<Scalar>>& vectors, size_t ncoords,
                      const BaseRingPtr& ring, const Mode& mode) {
    FlatIndex ix(ncoords, ring);
    size_t nb = vectors.size() * ix.nmasks;
    Mat<F> m(nb, ix.size());
    size_t row = 0;
    for (const auto& v : vectors) {
        require(v.size() == ncoords, "coordinate vector has wrong length");
        for (uint64_t mask = 0; mask < ix.nmasks; ++mask) {
            std::vector<Scalar> tv = theta_times(mask, v);
            flatten_into(tv, ix, mode, &m.a[row * m.cols]);
            ++row;
        }
    }
    return rref(m);
}

} // namespace

size_t flat_rank(const std::vector<std::vector<Scalar>>& vectors, size_t ncoords,
                 const BaseRingPtr& ring, const Mode& mode) {
    if (mode.point)
        return flat_rank_impl<Rational>(vectors, ncoords, ring, mode);
    return flat_rank_impl<RatFun>(vectors, ncoords, ring, mode);
}

ScalarEchelon scalar_echelon(std::vector<std::vector<Scalar>> rows, size_t pivot_limit) {
    ScalarEchelon ech;
    size_t ncols = rows.empty() ? 0 : rows.front().size();
    size_t search = std::min(ncols, pivot_limit);
    std::vector<char> used(rows.size(), 0);
    std::vector<char> pivoted(ncols, 0);
    for (;;) {
        // First column (in order) that has an invertible entry in an unused row.
        size_t pc = ncols, pr = rows.size();
        for (size_t c = 0; c < search && pc == ncols; ++c) {
            if (pivoted[c])
                continue;
            for (size_t r = 0; r < rows.size(); ++r) {
                if (used[r])
                    continue;
                const Scalar& e = rows[r][c];
                if (!e.is_zero() && !e.body().is_zero() && e.is_even()) {
                    pc = c;
                    pr = r;
                    break;
                }
            }
        }
        if (pc == ncols)
            break;
        used[pr] = 1;
        pivoted[pc] = 1;
        Scalar inv = rows[pr][pc].inverse();
        std::vector<Scalar> piv;
        piv.reserve(ncols);
        for (const auto& e : rows[pr])
            piv.push_back(inv * e);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == pr)
                continue;
            if (rows[r][pc].is_zero())
                continue;
            Scalar f = rows[r][pc];
            for (size_t c = 0; c < ncols; ++c)
                rows[r][c] = rows[r][c] - f * piv[c];
        }
        // Keep earlier pivot rows reduced against the new one as well.
        for (auto& row : ech.basis) {
            if (row[pc].is_zero())
                continue;
            Scalar f = row[pc];
            for (size_t c = 0; c < ncols; ++c)
                row[c] = row[c] - f * piv[c];
        }
        ech.basis.push_back(std::move(piv));
        ech.pivot_cols.push_back(pc);
    }
    for (size_t r = 0; r < rows.size(); ++r)
        if (!used[r] && !scalar_vec_is_zero(rows[r]))
            ech.stuck.push_back(std::move(rows[r]));
    return ech;
}

std::vector<Scalar> scalar_reduce(const ScalarEchelon& ech, std::vector<Scalar> v,
                                  std::vector<Scalar>* coeffs) {
    if (coeffs)
        coeffs->assign(ech.basis.size(), Scalar());
    for (size_t i = 0; i < ech.basis.size(); ++i) {
        size_t pc = ech.pivot_cols[i];
        if (v[pc].is_zero())
            continue;
        Scalar f = v[pc];
        for (size_t c = 0; c < v.size(); ++c)
            v[c] = v[c] - f * ech.basis[i][c];
        if (coeffs)
            (*coeffs)[i] = f;
    }
    return v;
}

bool scalar_vec_is_zero(const std::vector<Scalar>& v) {
    for (const auto& s : v)
        if (!s.is_zero())
            return false;
    return true;
}

namespace {

template <class F>
RankKernelImage rki_impl(const std::vector<std::vector<Scalar>>& matrix, const BaseRingPtr& ring,
                         const Mode& mode) {
    size_t nrows = matrix.size();
    size_t ncols = nrows == 0 ? 0 : matrix.front().size();
    FlatIndex rix(nrows, ring), cix(ncols, ring);
    Mat<F> m(rix.size(), cix.size());
    // Column (j, S) holds the image of theta_S * e_j.
    for (size_t j = 0; j < ncols; ++j) {
        for (uint64_t mask = 0; mask < cix.nmasks; ++mask) {
            std::vector<Scalar> img(nrows);
            for (size_t i = 0; i < nrows; ++i) {
                Scalar prod = matrix[i][j];
                img[i] = Scalar(prod.ring());
                for (const auto& [um, c] : prod.terms()) {
                    int sign = grassmann_merge_sign(um, mask);
                    if (sign == 0)
                        continue;
                    img[i].set_term(um | mask, sign > 0 ? c : -c);
                }
            }
            for (size_t i = 0; i < nrows; ++i)
                for (const auto& [tm, c] : img[i].terms()) {
                    if constexpr (std::is_same_v<F, Rational>)
                        m.at(rix.index(i, tm), cix.index(j, mask)) = to_point_field(c, mode);
                    else
                        m.at(rix.index(i, tm), cix.index(j, mask)) = c;
                }
        }
    }

    RankKernelImage out;
    Mat<F> k = kernel_of(m);
    out.rank = cix.size() - k.rows;
    require(out.rank + k.rows == cix.size(), "rank-nullity bookkeeping failed");
    auto unflatten = [&](const Mat<F>& rowsmat, size_t row, const FlatIndex& ix,
                         size_t ncoords) {
        std::vector<Scalar> v(ncoords, Scalar(ring));
        for (size_t j = 0; j < ncoords; ++j)
            for (uint64_t mask = 0; mask < ix.nmasks; ++mask) {
                const F& c = rowsmat.at(row, ix.index(j, mask));
                if (c == F(0))
                    continue;
                if constexpr (std::is_same_v<F, Rational>)
                    v[j].set_term(mask, RatFun(c));
                else
                    v[j].set_term(mask, c);
            }
        return v;
    };
    for (size_t r = 0; r < k.rows; ++r)
        out.kernel.push_back(unflatten(k, r, cix, ncols));
    // Image: row space of m^T, i.e. independent image columns reduced.
    Mat<F> mt(m.cols, m.rows);
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < m.cols; ++j)
            mt.at(j, i) = m.at(i, j);
    size_t ir = rref(mt);
    for (size_t r = 0; r < ir; ++r)
        out.image.push_back(unflatten(mt, r, rix, nrows));
    return out;
}

} // namespace

RankKernelImage rank_kernel_image(const std::vector<std::vector<Scalar>>& matrix,
                                  const BaseRingPtr& ring, const Mode& mode) {
    if (mode.point)
        return rki_impl<Rational>(matrix, ring, mode);
    return rki_impl<RatFun>(matrix, ring, mode);
}

} // namespace hcx
