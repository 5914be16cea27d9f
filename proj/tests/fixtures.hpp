#pragma once

#include "hcx/parse.hpp"
#include "hcx/subspace.hpp"

#include <string>
#include <vector>

namespace hcx::fixtures {

inline BaseRingPtr make_ring(std::vector<std::string> even, std::vector<std::string> odd) {
    return std::make_shared<BaseRing>(std::move(even), std::move(odd));
}

struct PairEntry {
    std::string a, b, value;
};

// Build a Heisenberg algebra from named basis vectors and the pairs (a,b)
// with nonzero bracket; the super-antisymmetric completion is automatic.
inline HeisenbergPtr make_heisenberg(const BaseRingPtr& ring,
                                     const std::vector<BasisVector>& basis,
                                     const std::vector<PairEntry>& pairs) {
    auto index = [&](const std::string& n) -> size_t {
        for (size_t i = 0; i < basis.size(); ++i)
            if (basis[i].name == n)
                return i;
        fail("unknown basis name " + n);
    };
    std::vector<std::vector<Scalar>> gram(basis.size(),
                                          std::vector<Scalar>(basis.size(), Scalar(ring)));
    for (const auto& p : pairs) {
        size_t i = index(p.a), j = index(p.b);
        Scalar v = parse_scalar(p.value, ring);
        gram[i][j] = gram[i][j] + v;
        if (i != j) {
            if (basis[i].parity == Parity::Odd && basis[j].parity == Parity::Odd)
                gram[j][i] = gram[j][i] + v;
            else
                gram[j][i] = gram[j][i] - v;
        }
    }
    return Heisenberg::create(WeylAlgebra::create(ring, basis, std::move(gram)));
}

// Standard even 2n-dimensional space: basis e1..en, e1*..en*, (ei, ei*) = 1.
inline HeisenbergPtr standard_even(const BaseRingPtr& ring, int n) {
    std::vector<BasisVector> basis;
    std::vector<PairEntry> pairs;
    for (int i = 1; i <= n; ++i)
        basis.push_back({"e" + std::to_string(i), Parity::Even});
    for (int i = 1; i <= n; ++i)
        basis.push_back({"e" + std::to_string(i) + "s", Parity::Even});
    for (int i = 1; i <= n; ++i)
        pairs.push_back({"e" + std::to_string(i), "e" + std::to_string(i) + "s", "1"});
    return make_heisenberg(ring, basis, pairs);
}

// Standard purely odd space of rank (0|2m): xi1..xim, xi1s..xims with
// symmetric pairing (xii, xiis) = 1.
inline HeisenbergPtr standard_odd(const BaseRingPtr& ring, int m) {
    std::vector<BasisVector> basis;
    std::vector<PairEntry> pairs;
    for (int i = 1; i <= m; ++i)
        basis.push_back({"xi" + std::to_string(i), Parity::Odd});
    for (int i = 1; i <= m; ++i)
        basis.push_back({"xi" + std::to_string(i) + "s", Parity::Odd});
    for (int i = 1; i <= m; ++i)
        pairs.push_back({"xi" + std::to_string(i), "xi" + std::to_string(i) + "s", "1"});
    return make_heisenberg(ring, basis, pairs);
}

// Mixed space (2n|2m) as the orthogonal sum of the two standard pieces.
inline HeisenbergPtr standard_mixed(const BaseRingPtr& ring, int n, int m) {
    std::vector<BasisVector> basis;
    std::vector<PairEntry> pairs;
    for (int i = 1; i <= n; ++i)
        basis.push_back({"e" + std::to_string(i), Parity::Even});
    for (int i = 1; i <= n; ++i)
        basis.push_back({"e" + std::to_string(i) + "s", Parity::Even});
    for (int i = 1; i <= m; ++i)
        basis.push_back({"xi" + std::to_string(i), Parity::Odd});
    for (int i = 1; i <= m; ++i)
        basis.push_back({"xi" + std::to_string(i) + "s", Parity::Odd});
    for (int i = 1; i <= n; ++i)
        pairs.push_back({"e" + std::to_string(i), "e" + std::to_string(i) + "s", "1"});
    for (int i = 1; i <= m; ++i)
        pairs.push_back({"xi" + std::to_string(i), "xi" + std::to_string(i) + "s", "1"});
    return make_heisenberg(ring, basis, pairs);
}

// Vector from "coeff*name + ..." style terms; "one" addresses the center.
inline std::vector<Scalar> hvec(const HeisenbergPtr& h,
                                const std::vector<std::pair<std::string, std::string>>& terms) {
    std::vector<Scalar> v = h->zero_vector();
    for (const auto& [name, coeff] : terms) {
        Scalar c = parse_scalar(coeff, h->ring());
        if (name == "one") {
            v[0] = v[0] + c;
            continue;
        }
        bool found = false;
        for (size_t i = 0; i < h->vdim(); ++i)
            if (h->weyl()->basis(i).name == name) {
                v[i + 1] = v[i + 1] + c;
                found = true;
                break;
            }
        require(found, "unknown basis name " + name);
    }
    return v;
}

inline Subspace span(const HeisenbergPtr& h, const std::string& name,
                     const std::vector<std::vector<std::pair<std::string, std::string>>>& gens) {
    std::vector<std::vector<Scalar>> vecs;
    for (const auto& g : gens)
        vecs.push_back(hvec(h, g));
    return Subspace::make(h, std::move(vecs), name);
}

inline Subspace span_names(const HeisenbergPtr& h, const std::string& name,
                           const std::vector<std::string>& basis_names) {
    std::vector<std::vector<std::pair<std::string, std::string>>> gens;
    for (const auto& n : basis_names)
        gens.push_back({{n, "1"}});
    return span(h, name, gens);
}

} // namespace hcx::fixtures
