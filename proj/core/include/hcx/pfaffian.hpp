#pragma once

#include "hcx/koszul.hpp"

#include <vector>

namespace hcx {

// Input data of the generalized Pfaffian: a skew matrix of even scalars and
// a vector of odd scalars, over the rank-(0|m) bundle L with its dual.
struct PfInput {
    BaseRingPtr ring;
    std::vector<std::vector<Scalar>> phi; // m x m, phi^T = -phi, even entries
    std::vector<Scalar> lambda;           // m odd entries

    size_t m() const { return lambda.size(); }
    void validate() const;
};

// Coefficient normalized against the descending product of the dual basis.
struct PfValue {
    Scalar coefficient;
    size_t m = 0;
    bool operator==(const PfValue& o) const { return coefficient == o.coefficient && m == o.m; }
    std::string str() const;
};

// Classical Pfaffian of a skew matrix of even scalars (recursive expansion
// along the first row; zero for odd sizes).
Scalar classical_pfaffian(const std::vector<std::vector<Scalar>>& a, const BaseRingPtr& ring);

// Closed-form subset expansion.
PfValue pf_formula(const PfInput& in);

// Definition route: vacuum class of the Clifford coinvariants, solved
// against the top monomial by exact linear algebra.
PfValue pf_oracle(const PfInput& in, const Mode& mode);

// Expansion in coinvariants, recursing on deleted rows and columns.
PfValue pf_recursion(const PfInput& in);

// The standard space W(L + L^dual) of rank (0|2m) with basis p1..pm, then
// duals p1s..pms, and (p_i, p_is) = 1. Dual letters carry the module model.
HeisenbergPtr pf_space(const BaseRingPtr& ring, size_t m);
// The graph Lagrangian L(phi, lambda) inside pf_space.
Subspace pf_subspace(const PfInput& in, const HeisenbergPtr& h);

// Rational section of the Berezinian pairing for purely odd Lagrangians: the
// Berezinian of L1 -> L2^dual is det^-1 of the pairing matrix, so this
// returns the determinant (theta inverse). Throws when the pairing is
// identically degenerate.
Scalar theta_inverse(const Subspace& l1, const Subspace& l2);

} // namespace hcx
