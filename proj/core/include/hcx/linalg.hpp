#pragma once

#include "hcx/scalar.hpp"

#include <optional>
#include <vector>

namespace hcx {

// Dense matrix over a field (Rational in point mode, RatFun in generic mode).
template <class F>
struct Mat {
    size_t rows = 0, cols = 0;
    std::vector<F> a;

    Mat() = default;
    Mat(size_t r, size_t c) : rows(r), cols(c), a(r * c, F(0)) {}
    F& at(size_t r, size_t c) { return a[r * cols + c]; }
    const F& at(size_t r, size_t c) const { return a[r * cols + c]; }
};

// Row-reduce in place to reduced row echelon form; returns rank and fills
// pivot columns when requested. Deterministic: first nonzero entry scanning
// columns left to right.
template <class F>
size_t rref(Mat<F>& m, std::vector<size_t>* pivot_cols = nullptr) {
    size_t r = 0;
    if (pivot_cols)
        pivot_cols->clear();
    for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
        size_t p = r;
        while (p < m.rows && m.at(p, c) == F(0))
            ++p;
        if (p == m.rows)
            continue;
        for (size_t j = 0; j < m.cols; ++j)
            std::swap(m.at(p, j), m.at(r, j));
        F inv = F(1) / m.at(r, c);
        for (size_t j = c; j < m.cols; ++j)
            m.at(r, j) = m.at(r, j) * inv;
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == F(0))
                continue;
            F f = m.at(i, c);
            for (size_t j = c; j < m.cols; ++j)
                m.at(i, j) = m.at(i, j) - f * m.at(r, j);
        }
        if (pivot_cols)
            pivot_cols->push_back(c);
        ++r;
    }
    return r;
}

template <class F>
size_t rank_of(Mat<F> m) {
    return rref(m);
}

// Basis (as rows) of { x : M x = 0 }.
template <class F>
Mat<F> kernel_of(Mat<F> m) {
    std::vector<size_t> pivots;
    size_t r = rref(m, &pivots);
    std::vector<char> is_pivot(m.cols, 0);
    for (size_t c : pivots)
        is_pivot[c] = 1;
    Mat<F> k(m.cols - r, m.cols);
    size_t row = 0;
    for (size_t free = 0; free < m.cols; ++free) {
        if (is_pivot[free])
            continue;
        k.at(row, free) = F(1);
        for (size_t i = 0; i < r; ++i)
            k.at(row, pivots[i]) = -m.at(i, free);
        ++row;
    }
    return k;
}

// Solve M x = b; returns one solution if consistent.
template <class F>
std::optional<std::vector<F>> solve_linear(const Mat<F>& m, const std::vector<F>& b) {
    Mat<F> aug(m.rows, m.cols + 1);
    for (size_t i = 0; i < m.rows; ++i) {
        for (size_t j = 0; j < m.cols; ++j)
            aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = b[i];
    }
    std::vector<size_t> pivots;
    size_t r = rref(aug, &pivots);
    for (size_t i = 0; i < r; ++i)
        if (pivots[i] == m.cols)
            return std::nullopt;
    std::vector<F> x(m.cols, F(0));
    for (size_t i = 0; i < r; ++i)
        x[pivots[i]] = aug.at(i, m.cols);
    return x;
}

// Computation mode. In point mode every even variable that occurs must be
// covered by the assignment; odd variables are never specialized.
struct Mode {
    bool point = false;
    std::vector<std::pair<size_t, Rational>> assignment;

    static Mode generic() { return Mode{}; }
    static Mode at_point(std::vector<std::pair<size_t, Rational>> a) {
        return Mode{true, std::move(a)};
    }
};

// Lower a K coefficient into the computation field.
Rational to_point_field(const RatFun& c, const Mode& mode);
inline const RatFun& to_generic_field(const RatFun& c) { return c; }

// Flat basis over K for a free Scalar module of dimension n: index pairs
// (coordinate, odd subset mask). Masks run over all subsets of the ring's
// odd names.
struct FlatIndex {
    size_t coords = 0;
    size_t nmasks = 1;

    FlatIndex() = default;
    FlatIndex(size_t n, const BaseRingPtr& ring)
        : coords(n), nmasks(size_t(1) << (ring ? ring->num_odd() : 0)) {}
    size_t size() const { return coords * nmasks; }
    size_t index(size_t coord, uint64_t mask) const { return coord * nmasks + mask; }
};

// Write a Scalar coordinate vector into a flat K row.
template <class F>
void flatten_into(const std::vector<Scalar>& v, const FlatIndex& ix, const Mode& mode, F* row) {
    for (size_t j = 0; j < v.size(); ++j)
        for (const auto& [mask, c] : v[j].terms()) {
            if constexpr (std::is_same_v<F, Rational>)
                row[ix.index(j, mask)] = to_point_field(c, mode);
            else
                row[ix.index(j, mask)] = c;
        }
}

// Multiply a Scalar coordinate vector by theta_mask on the left.
std::vector<Scalar> theta_times(uint64_t mask, const std::vector<Scalar>& v);

// Flattened rank of the span of Scalar coordinate vectors (module rank over
// K after adjoining theta monomials to the basis).
size_t flat_rank(const std::vector<std::vector<Scalar>>& vectors, size_t ncoords,
                 const BaseRingPtr& ring, const Mode& mode);

// Result of exact unit-pivot elimination over the Scalar ring.
struct ScalarEchelon {
    std::vector<std::vector<Scalar>> basis; // unit-pivot rows, reduced
    std::vector<size_t> pivot_cols;         // one per basis row
    std::vector<std::vector<Scalar>> stuck; // leftover nonzero rows
};

// Gauss elimination over the Scalar ring using invertible (nonzero-body)
// pivots only, searched in columns below pivot_limit. Leftover nonzero rows
// are returned in `stuck`.
ScalarEchelon scalar_echelon(std::vector<std::vector<Scalar>> rows,
                             size_t pivot_limit = static_cast<size_t>(-1));

// Reduce v against an echelon basis; the remainder has zeros in all pivot
// columns. When coeffs is nonnull it receives the coordinates used.
std::vector<Scalar> scalar_reduce(const ScalarEchelon& ech, std::vector<Scalar> v,
                                  std::vector<Scalar>* coeffs = nullptr);

bool scalar_vec_is_zero(const std::vector<Scalar>& v);

// exactcore rank/kernel/image over the flattened field.
struct RankKernelImage {
    size_t rank = 0;
    std::vector<std::vector<Scalar>> kernel; // Scalar coordinate vectors
    std::vector<std::vector<Scalar>> image;  // Scalar coordinate vectors
};

// Matrix given row-major as rows x cols of Scalars, acting on column vectors.
RankKernelImage rank_kernel_image(const std::vector<std::vector<Scalar>>& matrix,
                                  const BaseRingPtr& ring, const Mode& mode);

} // namespace hcx
