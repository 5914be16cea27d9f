#pragma once

#include "hcx/linalg.hpp"
#include "hcx/scalar.hpp"

#include <vector>

namespace hcx {

// Matrix over the Scalar ring with row/column parities.
struct SuperMatrix {
    std::vector<Parity> row_parity;
    std::vector<Parity> col_parity;
    std::vector<std::vector<Scalar>> entries; // rows x cols

    size_t rows() const { return row_parity.size(); }
    size_t cols() const { return col_parity.size(); }
    const Scalar& at(size_t r, size_t c) const { return entries[r][c]; }
    Scalar& at(size_t r, size_t c) { return entries[r][c]; }

    // Even homogeneity: entry parity equals row parity + column parity.
    bool is_even_homogeneous() const;
};

// Determinant of a square matrix of even scalars, by elimination with
// invertible pivots (valid over the local ring of even scalars).
Scalar scalar_det(const std::vector<std::vector<Scalar>>& m, const BaseRingPtr& ring);

// Inverse of a square matrix of even scalars; requires det body nonzero.
std::vector<std::vector<Scalar>> scalar_inverse(const std::vector<std::vector<Scalar>>& m,
                                                const BaseRingPtr& ring);

// Ber(M) = det(A - B D^-1 C) det(D)^-1 for an even supermatrix in block form
// determined by the parities; requires the odd-odd block to be invertible.
Scalar berezinian(const SuperMatrix& m, const BaseRingPtr& ring);

// Rees filtration membership for an element of a filtered module presented
// as terms (coefficient, filtration level): every term of level i must have
// coefficient in N^i and level at most m.
bool rees_member(const std::vector<std::pair<Scalar, int>>& terms, int m);

// Same test for a single scalar whose filtration is the total degree in the
// designated even variables. Denominators must not involve those variables.
bool rees_member_scalar(const Scalar& s, const std::vector<size_t>& filtration_vars, int m);

} // namespace hcx
