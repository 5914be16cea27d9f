#include "hcx/pfaffian.hpp"

#include "hcx/error.hpp"
#include "hcx/supermatrix.hpp"

#include <sstream>

namespace hcx {

void PfInput::validate() const {
    size_t n = m();
    require(phi.size() == n, "phi must be m x m");
    for (const auto& row : phi)
        require(row.size() == n, "phi must be m x m");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            require(phi[i][j].is_even(), "phi entries must be even");
            require(phi[i][j] == -phi[j][i], "phi must be skew-symmetric");
        }
    for (const auto& l : lambda)
        require(l.is_odd(), "lambda entries must be odd");
}

std::string PfValue::str() const {
    std::ostringstream out;
    out << "(" << coefficient.str() << ")";
    for (size_t i = m; i-- > 0;)
        out << " p" << (i + 1) << "s";
    return out.str();
}

namespace {

Scalar classical_pf_rec(const std::vector<std::vector<Scalar>>& a,
                        const std::vector<size_t>& idx, const BaseRingPtr& ring) {
    if (idx.empty())
        return Scalar::constant(ring, 1);
    if (idx.size() % 2 == 1)
        return Scalar(ring);
    Scalar acc(ring);
    for (size_t j = 1; j < idx.size(); ++j) {
        const Scalar& entry = a[idx[0]][idx[j]];
        if (entry.is_zero())
            continue;
        std::vector<size_t> rest;
        for (size_t k = 1; k < idx.size(); ++k)
            if (k != j)
                rest.push_back(idx[k]);
        Scalar term = entry * classical_pf_rec(a, rest, ring);
        if (j % 2 == 0)
            term = -term;
        acc = acc + term;
    }
    return acc;
}

} // namespace

Scalar classical_pfaffian(const std::vector<std::vector<Scalar>>& a, const BaseRingPtr& ring) {
    std::vector<size_t> idx(a.size());
    for (size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    return classical_pf_rec(a, idx, ring);
}

PfValue pf_formula(const PfInput& in) {
    in.validate();
    size_t m = in.m();
    const BaseRingPtr& ring = in.ring;
    Scalar acc(ring);
    for (uint64_t subset = 0; subset < (uint64_t(1) << m); ++subset) {
        size_t count = static_cast<size_t>(std::popcount(subset));
        if ((m - count) % 2 == 1)
            continue; // the classical Pfaffian of odd size vanishes
        // w(I) = sum (i_j - j), 1-based.
        int w = 0;
        {
            int pos = 1;
            for (size_t i = 0; i < m; ++i)
                if (subset & (uint64_t(1) << i))
                    w += static_cast<int>(i + 1) - pos++;
        }
        int exp = w + static_cast<int>((m - count) / 2);
        // lambda_I ascending.
        Scalar lam = Scalar::constant(ring, 1);
        for (size_t i = 0; i < m; ++i)
            if (subset & (uint64_t(1) << i))
                lam = lam * in.lambda[i];
        if (lam.is_zero())
            continue;
        // phi with the rows and columns in I deleted.
        std::vector<size_t> keep;
        for (size_t i = 0; i < m; ++i)
            if (!(subset & (uint64_t(1) << i)))
                keep.push_back(i);
        std::vector<std::vector<Scalar>> minor(keep.size(),
                                               std::vector<Scalar>(keep.size(), Scalar(ring)));
        for (size_t a = 0; a < keep.size(); ++a)
            for (size_t b = 0; b < keep.size(); ++b)
                minor[a][b] = in.phi[keep[a]][keep[b]];
        Scalar term = lam * classical_pfaffian(minor, ring);
        if (exp % 2 != 0)
            term = -term;
        acc = acc + term;
    }
    return PfValue{acc, m};
}

HeisenbergPtr pf_space(const BaseRingPtr& ring, size_t m) {
    std::vector<BasisVector> basis;
    for (size_t i = 1; i <= m; ++i)
        basis.push_back({"p" + std::to_string(i), Parity::Odd});
    for (size_t i = 1; i <= m; ++i)
        basis.push_back({"p" + std::to_string(i) + "s", Parity::Odd});
    std::vector<std::vector<Scalar>> gram(2 * m, std::vector<Scalar>(2 * m, Scalar(ring)));
    for (size_t i = 0; i < m; ++i) {
        gram[i][m + i] = Scalar::constant(ring, 1);
        gram[m + i][i] = Scalar::constant(ring, 1); // odd pairing is symmetric
    }
    return Heisenberg::create(WeylAlgebra::create(ring, std::move(basis), std::move(gram)));
}

Subspace pf_subspace(const PfInput& in, const HeisenbergPtr& h) {
    size_t m = in.m();
    std::vector<std::vector<Scalar>> gens;
    for (size_t i = 0; i < m; ++i) {
        std::vector<Scalar> g = h->zero_vector();
        g[0] = -in.lambda[i];
        g[i + 1] = Scalar::constant(in.ring, 1);
        for (size_t k = 0; k < m; ++k)
            g[m + k + 1] = -in.phi[k][i];
        gens.push_back(std::move(g));
    }
    return Subspace::make(h, std::move(gens), "L(phi,lambda)");
}

PfValue pf_oracle(const PfInput& in, const Mode& mode) {
    in.validate();
    size_t m = in.m();
    const BaseRingPtr& ring = in.ring;
    HeisenbergPtr h = pf_space(ring, m);
    Subspace kill = Subspace::make(h, [&] {
        std::vector<std::vector<Scalar>> gs;
        for (size_t i = 0; i < m; ++i) {
            std::vector<Scalar> g = h->zero_vector();
            g[i + 1] = Scalar::constant(ring, 1);
            gs.push_back(std::move(g));
        }
        return gs;
    }(), "L");
    FockModule fock = FockModule::for_subspace(kill, Side::Left, mode);
    ModuleModel model = ModuleModel::from_fock(fock);
    Subspace graph = pf_subspace(in, h);
    Coinvariants coin(graph, model, static_cast<int>(m), mode);

    // Top monomial: the ascending word of all dual letters.
    Word top;
    for (size_t k = 0; k < m; ++k)
        top.push_back(static_cast<uint16_t>(fock.chart()->dual_index(k)));
    std::sort(top.begin(), top.end());
    WeylElement target = fock.chart()->weyl()->monomial(top, Scalar::constant(ring, 1));
    auto c = coin.express(model.vac, target);
    require(c.has_value(), "vacuum class is not a multiple of the top monomial");
    // Reorder the ascending product into the descending normalization.
    if ((m * (m - 1) / 2) % 2 == 1)
        *c = -*c;
    return PfValue{*c, m};
}

namespace {

Scalar pf_expand(const PfInput& in, std::vector<size_t> idx) {
    const BaseRingPtr& ring = in.ring;
    if (idx.empty())
        return Scalar::constant(ring, 1);
    size_t first = idx[0];
    std::vector<size_t> rest(idx.begin() + 1, idx.end());
    Scalar acc = in.lambda[first] * pf_expand(in, rest);
    for (size_t j = 0; j < rest.size(); ++j) {
        size_t i = rest[j];
        if (in.phi[i][first].is_zero())
            continue;
        std::vector<size_t> sub;
        int smaller = 0;
        for (size_t k = 0; k < rest.size(); ++k) {
            if (k == j)
                continue;
            sub.push_back(rest[k]);
            if (rest[k] < i)
                ++smaller;
        }
        Scalar term = pf_expand(in, sub) * in.phi[i][first];
        if (smaller % 2 == 1)
            term = -term;
        acc = acc + term;
    }
    return acc;
}

} // namespace

PfValue pf_recursion(const PfInput& in) {
    in.validate();
    std::vector<size_t> idx(in.m());
    for (size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    return PfValue{pf_expand(in, idx), in.m()};
}

Scalar theta_inverse(const Subspace& l1, const Subspace& l2) {
    require(l1.ambient == l2.ambient, "theta across ambient spaces");
    auto [p, q] = l1.ambient->weyl()->super_dims();
    require(p == 0, "theta is defined for purely odd V");
    require(l1.count() == l2.count(), "Lagrangians of different rank");
    const BaseRingPtr& ring = l1.ambient->ring();
    std::vector<std::vector<Scalar>> pairing(l1.count(),
                                             std::vector<Scalar>(l2.count(), Scalar(ring)));
    for (size_t i = 0; i < l1.count(); ++i)
        for (size_t j = 0; j < l2.count(); ++j)
            pairing[i][j] = l1.ambient->pair(l1.gens[i], l2.gens[j]);
    Scalar det = scalar_det(pairing, ring);
    require(!det.is_zero(), "identically degenerate pairing");
    return det;
}

} // namespace hcx
