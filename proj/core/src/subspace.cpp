#include "hcx/subspace.hpp"

#include "hcx/error.hpp"

namespace hcx {

HeisenbergPtr Heisenberg::create(WeylAlgebraPtr weyl) {
    return HeisenbergPtr(new Heisenberg(std::move(weyl)));
}

std::vector<Scalar> Heisenberg::basis_vector(size_t v) const {
    auto vec = zero_vector();
    vec[v + 1] = Scalar::constant(ring(), 1);
    return vec;
}

std::vector<Scalar> Heisenberg::center_vector() const {
    auto vec = zero_vector();
    vec[0] = Scalar::constant(ring(), 1);
    return vec;
}

Scalar Heisenberg::pair(const std::vector<Scalar>& a, const std::vector<Scalar>& b) const {
    WeylElement ea = element(a), eb = element(b);
    if (ea.is_zero() || eb.is_zero())
        return Scalar(ring());
    return ea.supercommutator(eb).scalar_part();
}

std::optional<Parity> vector_parity(const Heisenberg& h, const std::vector<Scalar>& v) {
    std::optional<Parity> p;
    for (size_t j = 0; j < v.size(); ++j) {
        if (v[j].is_zero())
            continue;
        auto cp = v[j].parity();
        if (!cp)
            return std::nullopt;
        Parity basis = j == 0 ? Parity::Even : h.weyl()->parity(j - 1);
        Parity q = *cp + basis;
        if (!p)
            p = q;
        else if (*p != q)
            return std::nullopt;
    }
    return p ? p : std::optional<Parity>(Parity::Even);
}

std::vector<std::pair<std::vector<Scalar>, Parity>> homogeneous_parts(
    const Heisenberg& h, const std::vector<Scalar>& v) {
    const BaseRingPtr& ring = h.ring();
    std::vector<Scalar> even(v.size(), Scalar(ring)), odd(v.size(), Scalar(ring));
    bool has_even = false, has_odd = false;
    for (size_t j = 0; j < v.size(); ++j) {
        Parity basis = j == 0 ? Parity::Even : h.weyl()->parity(j - 1);
        for (const auto& [mask, c] : v[j].terms()) {
            Parity cp = std::popcount(mask) % 2 ? Parity::Odd : Parity::Even;
            if (cp + basis == Parity::Even) {
                even[j].set_term(mask, c);
                has_even = true;
            } else {
                odd[j].set_term(mask, c);
                has_odd = true;
            }
        }
    }
    std::vector<std::pair<std::vector<Scalar>, Parity>> out;
    if (has_even)
        out.emplace_back(std::move(even), Parity::Even);
    if (has_odd)
        out.emplace_back(std::move(odd), Parity::Odd);
    return out;
}

Subspace Subspace::make(HeisenbergPtr h, std::vector<std::vector<Scalar>> gens, std::string name) {
    Subspace s;
    s.ambient = std::move(h);
    s.name = std::move(name);
    for (auto& g : gens) {
        require(g.size() == s.ambient->hdim(), "generator has wrong coordinate length");
        for (auto& [vec, par] : homogeneous_parts(*s.ambient, g)) {
            s.gens.push_back(std::move(vec));
            s.parities.push_back(par);
        }
    }
    return s;
}

std::vector<Scalar> pi(const std::vector<Scalar>& hvec) {
    return std::vector<Scalar>(hvec.begin() + 1, hvec.end());
}

size_t subspace_rank(const Subspace& s, const Mode& mode) {
    size_t q = s.ambient->ring() ? s.ambient->ring()->num_odd() : 0;
    size_t r = flat_rank(s.gens, s.ambient->hdim(), s.ambient->ring(), mode);
    // Module rank of a subbundle: flattened rank divided by 2^q.
    size_t cell = size_t(1) << q;
    require(r % cell == 0, "flattened rank is not a multiple of 2^q; span is not free");
    return r / cell;
}

size_t pi_rank(const Subspace& s, const Mode& mode) {
    std::vector<std::vector<Scalar>> proj;
    for (const auto& g : s.gens)
        proj.push_back(pi(g));
    size_t q = s.ambient->ring() ? s.ambient->ring()->num_odd() : 0;
    size_t r = flat_rank(proj, s.ambient->vdim(), s.ambient->ring(), mode);
    size_t cell = size_t(1) << q;
    require(r % cell == 0, "flattened rank is not a multiple of 2^q; span is not free");
    return r / cell;
}

bool gens_independent(const Subspace& s, const Mode& mode) {
    return subspace_rank(s, mode) == s.count();
}

bool transversal_to_center(const Subspace& s, const Mode& mode) {
    return pi_rank(s, mode) == s.count();
}

bool is_isotropic(const Subspace& s) { return isotropy_witness(s).empty(); }

std::string isotropy_witness(const Subspace& s) {
    for (size_t i = 0; i < s.count(); ++i)
        for (size_t j = i; j < s.count(); ++j) {
            if (i == j && s.parities[i] == Parity::Even)
                continue;
            Scalar b = s.ambient->pair(s.gens[i], s.gens[j]);
            if (!b.is_zero())
                return "bracket of generators " + std::to_string(i + 1) + " and " +
                       std::to_string(j + 1) + " is " + b.str();
        }
    return "";
}

std::vector<std::vector<Scalar>> ring_left_kernel(const std::vector<std::vector<Scalar>>& rows,
                                                  const BaseRingPtr& ring, const Mode& mode) {
    size_t nrows = rows.size();
    if (nrows == 0)
        return {};
    size_t ncols = rows.front().size();
    // Augment with identity to track combinations.
    std::vector<std::vector<Scalar>> aug(nrows, std::vector<Scalar>(ncols + nrows, Scalar(ring)));
    for (size_t i = 0; i < nrows; ++i) {
        for (size_t c = 0; c < ncols; ++c)
            aug[i][c] = rows[i][c];
        aug[i][ncols + i] = Scalar::constant(ring, 1);
    }
    ScalarEchelon ech = scalar_echelon(std::move(aug), ncols);
    std::vector<std::vector<Scalar>> kernel;
    bool need_fallback = false;
    for (const auto& row : ech.stuck) {
        bool data_zero = true;
        for (size_t c = 0; c < ncols; ++c)
            if (!row[c].is_zero()) {
                data_zero = false;
                break;
            }
        if (data_zero)
            kernel.emplace_back(row.begin() + ncols, row.end());
        else
            need_fallback = true;
    }
    if (!need_fallback)
        return kernel;

    // Flattened fallback: left kernel over K of the theta-expanded rows.
    kernel.clear();
    size_t q = ring ? ring->num_odd() : 0;
    size_t nmasks = size_t(1) << q;
    FlatIndex cix(ncols, ring);
    auto build = [&](auto field_tag) {
        using F = decltype(field_tag);
        Mat<F> m(nrows * nmasks, cix.size());
        for (size_t i = 0; i < nrows; ++i)
            for (uint64_t mask = 0; mask < nmasks; ++mask) {
                std::vector<Scalar> tv = theta_times(mask, rows[i]);
                flatten_into(tv, cix, mode, &m.a[(i * nmasks + mask) * m.cols]);
            }
        Mat<F> mt(m.cols, m.rows);
        for (size_t r = 0; r < m.rows; ++r)
            for (size_t c = 0; c < m.cols; ++c)
                mt.at(c, r) = m.at(r, c);
        Mat<F> k = kernel_of(mt);
        for (size_t r = 0; r < k.rows; ++r) {
            std::vector<Scalar> coeffs(nrows, Scalar(ring));
            for (size_t i = 0; i < nrows; ++i)
                for (uint64_t mask = 0; mask < nmasks; ++mask) {
                    const F& c = k.at(r, i * nmasks + mask);
                    if (c == F(0))
                        continue;
                    if constexpr (std::is_same_v<F, Rational>)
                        coeffs[i].set_term(mask, RatFun(c));
                    else
                        coeffs[i].set_term(mask, c);
                }
            kernel.push_back(std::move(coeffs));
        }
    };
    if (mode.point)
        build(Rational(0));
    else
        build(RatFun(0));
    return kernel;
}

Subspace perp_in_v(const Subspace& s, const Mode& mode) {
    const Heisenberg& h = *s.ambient;
    size_t n = h.vdim();
    // P[j][k] = (basis_j, gen_k); homogeneous w in the perp iff w * P = 0.
    std::vector<std::vector<Scalar>> p(n, std::vector<Scalar>(s.count(), Scalar(h.ring())));
    for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < s.count(); ++k)
            p[j][k] = h.pair(h.basis_vector(j), s.gens[k]);
    std::vector<std::vector<Scalar>> coeffs = ring_left_kernel(p, h.ring(), mode);
    std::vector<std::vector<Scalar>> gens;
    for (const auto& cf : coeffs) {
        std::vector<Scalar> v = h.zero_vector();
        for (size_t j = 0; j < n; ++j)
            v[j + 1] = cf[j];
        if (!scalar_vec_is_zero(v))
            gens.push_back(std::move(v));
    }
    return Subspace::make(s.ambient, std::move(gens), s.name.empty() ? "" : s.name + "^perp");
}

Subspace centralizer(const Subspace& s, const Mode& mode) {
    Subspace perp = perp_in_v(s, mode);
    std::vector<std::vector<Scalar>> gens;
    gens.push_back(s.ambient->center_vector());
    for (auto& g : perp.gens)
        gens.push_back(g);
    return Subspace::make(s.ambient, std::move(gens), "c(" + s.name + ")");
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    require(a.ambient == b.ambient, "subspace sum across ambient algebras");
    std::vector<std::vector<Scalar>> gens = a.gens;
    gens.insert(gens.end(), b.gens.begin(), b.gens.end());
    return Subspace::make(a.ambient, std::move(gens), a.name + "+" + b.name);
}

Subspace subspace_intersection(const Subspace& a, const Subspace& b, const Mode& mode) {
    require(a.ambient == b.ambient, "subspace intersection across ambient algebras");
    std::vector<std::vector<Scalar>> rows = a.gens;
    rows.insert(rows.end(), b.gens.begin(), b.gens.end());
    auto kernel = ring_left_kernel(rows, a.ambient->ring(), mode);
    std::vector<std::vector<Scalar>> gens;
    for (const auto& k : kernel) {
        std::vector<Scalar> v = a.ambient->zero_vector();
        for (size_t i = 0; i < a.count(); ++i)
            for (size_t c = 0; c < v.size(); ++c)
                v[c] = v[c] + k[i] * a.gens[i][c];
        if (!scalar_vec_is_zero(v))
            gens.push_back(std::move(v));
    }
    Subspace raw = Subspace::make(a.ambient, std::move(gens), a.name + "&" + b.name);
    // Reduce to an independent generating set.
    ScalarEchelon ech = scalar_echelon(raw.gens);
    std::vector<std::vector<Scalar>> basis = ech.basis;
    for (auto& row : ech.stuck)
        basis.push_back(row);
    return Subspace::make(a.ambient, std::move(basis), a.name + "&" + b.name);
}

bool subspace_member(const Subspace& s, const std::vector<Scalar>& v, const Mode& mode) {
    ScalarEchelon ech = scalar_echelon(s.gens);
    std::vector<Scalar> rem = scalar_reduce(ech, v);
    if (scalar_vec_is_zero(rem))
        return true;
    if (ech.stuck.empty())
        return false;
    size_t with = flat_rank([&] {
        auto g = s.gens;
        g.push_back(v);
        return g;
    }(), s.ambient->hdim(), s.ambient->ring(), mode);
    size_t without = flat_rank(s.gens, s.ambient->hdim(), s.ambient->ring(), mode);
    return with == without;
}

bool same_span(const Subspace& a, const Subspace& b, const Mode& mode) {
    size_t ra = flat_rank(a.gens, a.ambient->hdim(), a.ambient->ring(), mode);
    size_t rb = flat_rank(b.gens, b.ambient->hdim(), b.ambient->ring(), mode);
    if (ra != rb)
        return false;
    std::vector<std::vector<Scalar>> both = a.gens;
    both.insert(both.end(), b.gens.begin(), b.gens.end());
    return flat_rank(both, a.ambient->hdim(), a.ambient->ring(), mode) == ra;
}

bool is_lagrangian(const Subspace& s, const Mode& mode) {
    if (!is_isotropic(s))
        return false;
    if (!transversal_to_center(s, mode))
        return false;
    // pi(S)^perp = pi(S): compare spans inside V.
    Subspace perp = perp_in_v(s, mode);
    std::vector<std::vector<Scalar>> proj;
    for (const auto& g : s.gens) {
        auto v = g;
        v[0] = Scalar(s.ambient->ring());
        proj.push_back(std::move(v));
    }
    Subspace piS = Subspace::make(s.ambient, std::move(proj), "pi(" + s.name + ")");
    return same_span(perp, piS, mode);
}

std::vector<Scalar> ReducedHeisenberg::project(const std::vector<Scalar>& v) const {
    const Heisenberg& h = *i_copy.ambient;
    size_t hd = h.hdim();
    std::vector<Scalar> ext(solve_basis.basis.empty() ? hd : solve_basis.basis.front().size(),
                            Scalar(h.ring()));
    for (size_t c = 0; c < hd; ++c)
        ext[c] = v[c];
    std::vector<Scalar> rem = scalar_reduce(solve_basis, ext);
    for (size_t c = 0; c < hd; ++c)
        require(rem[c].is_zero(), "vector is not in the centralizer span");
    // Tail holds minus the coordinates with respect to [center | I | reps].
    size_t ni = i_copy.count();
    std::vector<Scalar> out(hbar->hdim(), Scalar(hbar->ring()));
    out[0] = -rem[hd];
    for (size_t r = 0; r < reps.size(); ++r)
        out[r + 1] = -rem[hd + 1 + ni + r];
    return out;
}

Subspace ReducedHeisenberg::project_subspace(const Subspace& s) const {
    std::vector<std::vector<Scalar>> gens;
    for (const auto& g : s.gens) {
        auto v = project(g);
        if (!scalar_vec_is_zero(v))
            gens.push_back(std::move(v));
    }
    Subspace raw = Subspace::make(hbar, std::move(gens), s.name + "-bar");
    ScalarEchelon ech = scalar_echelon(raw.gens);
    std::vector<std::vector<Scalar>> basis = ech.basis;
    for (auto& row : ech.stuck)
        basis.push_back(row);
    return Subspace::make(hbar, std::move(basis), s.name + "-bar");
}

ReducedHeisenberg reduced_heisenberg(const Subspace& isotropic, const Mode& mode) {
    require(is_isotropic(isotropic), "reduction of a non-isotropic subspace: " +
                                         isotropy_witness(isotropic));
    require(transversal_to_center(isotropic, mode),
            "subspace is not transversal to the center");
    const Heisenberg& h = *isotropic.ambient;
    Subspace cent = centralizer(isotropic, mode);

    // Greedy complement of (center + I) inside c(I), scanning the centralizer
    // generators in their deterministic order.
    std::vector<std::vector<Scalar>> span;
    span.push_back(h.center_vector());
    for (const auto& g : isotropic.gens)
        span.push_back(g);
    size_t rank = flat_rank(span, h.hdim(), h.ring(), mode);
    std::vector<std::vector<Scalar>> reps;
    std::vector<Parity> rep_parities;
    for (size_t k = 0; k < cent.count(); ++k) {
        auto trial = span;
        trial.push_back(cent.gens[k]);
        size_t r = flat_rank(trial, h.hdim(), h.ring(), mode);
        if (r > rank) {
            rank = r;
            span = std::move(trial);
            reps.push_back(cent.gens[k]);
            rep_parities.push_back(cent.parities[k]);
        }
    }

    std::vector<BasisVector> basis;
    for (size_t i = 0; i < reps.size(); ++i)
        basis.push_back({"v" + std::to_string(i + 1), rep_parities[i]});
    std::vector<std::vector<Scalar>> gram(reps.size(),
                                          std::vector<Scalar>(reps.size(), Scalar(h.ring())));
    for (size_t i = 0; i < reps.size(); ++i)
        for (size_t j = 0; j < reps.size(); ++j)
            gram[i][j] = h.pair(reps[i], reps[j]);

    ReducedHeisenberg red;
    red.hbar = Heisenberg::create(WeylAlgebra::create(h.ring(), std::move(basis), std::move(gram)));
    red.reps = reps;
    red.i_copy = isotropic;

    size_t hd = h.hdim();
    size_t nrows = 1 + isotropic.count() + reps.size();
    std::vector<std::vector<Scalar>> aug(nrows, std::vector<Scalar>(hd + nrows, Scalar(h.ring())));
    auto put = [&](size_t row, const std::vector<Scalar>& v) {
        for (size_t c = 0; c < hd; ++c)
            aug[row][c] = v[c];
        aug[row][hd + row] = Scalar::constant(h.ring(), 1);
    };
    put(0, h.center_vector());
    for (size_t i = 0; i < isotropic.count(); ++i)
        put(1 + i, isotropic.gens[i]);
    for (size_t r = 0; r < reps.size(); ++r)
        put(1 + isotropic.count() + r, reps[r]);
    red.solve_basis = scalar_echelon(std::move(aug), hd);
    require(red.solve_basis.stuck.empty(),
            "could not build an invertible coordinate solve for the reduction");
    return red;
}

Pushout pushout_central_character(const CentralExtension& ext, const std::vector<Scalar>& chi,
                                  const Mode& mode) {
    const WeylAlgebraPtr& wt = ext.wt;
    const BaseRingPtr& ring = wt->ring();
    require(chi.size() == ext.k_gens.size(), "one character value per radical generator");
    // The kernel K must be central for the pulled-back form.
    for (size_t i = 0; i < ext.k_gens.size(); ++i) {
        std::vector<Scalar> k = ext.k_gens[i];
        for (size_t j = 0; j < wt->dim(); ++j) {
            WeylElement ke(wt);
            for (size_t c = 0; c < wt->dim(); ++c)
                if (!k[c].is_zero())
                    ke += wt->generator(c).scaled(k[c]);
            Scalar b = ke.supercommutator(wt->generator(j)).scalar_part();
            require(b.is_zero(), "K is not in the radical of the pulled-back form");
        }
    }

    // Greedy complement of K among the Vt basis vectors.
    std::vector<std::vector<Scalar>> span = ext.k_gens;
    size_t rank = flat_rank(span, wt->dim(), ring, mode);
    std::vector<size_t> complement;
    for (size_t j = 0; j < wt->dim(); ++j) {
        std::vector<Scalar> unit(wt->dim(), Scalar(ring));
        unit[j] = Scalar::constant(ring, 1);
        auto trial = span;
        trial.push_back(unit);
        size_t r = flat_rank(trial, wt->dim(), ring, mode);
        if (r > rank) {
            rank = r;
            span = std::move(trial);
            complement.push_back(j);
        }
    }

    std::vector<BasisVector> basis;
    std::vector<std::vector<Scalar>> gram(complement.size(),
                                          std::vector<Scalar>(complement.size(), Scalar(ring)));
    for (size_t a = 0; a < complement.size(); ++a) {
        basis.push_back(wt->basis(complement[a]));
        for (size_t b = 0; b < complement.size(); ++b)
            gram[a][b] = wt->gram(complement[a], complement[b]);
    }
    HeisenbergPtr h_chi = Heisenberg::create(WeylAlgebra::create(ring, std::move(basis), gram));

    // Solve v = sum kappa_i k_i + sum gamma_a c_a with tracked coefficients.
    size_t n = wt->dim();
    size_t nrows = ext.k_gens.size() + complement.size();
    std::vector<std::vector<Scalar>> aug(nrows, std::vector<Scalar>(n + nrows, Scalar(ring)));
    for (size_t i = 0; i < ext.k_gens.size(); ++i) {
        for (size_t c = 0; c < n; ++c)
            aug[i][c] = ext.k_gens[i][c];
        aug[i][n + i] = Scalar::constant(ring, 1);
    }
    for (size_t a = 0; a < complement.size(); ++a) {
        size_t row = ext.k_gens.size() + a;
        aug[row][complement[a]] = Scalar::constant(ring, 1);
        aug[row][n + row] = Scalar::constant(ring, 1);
    }
    auto ech = std::make_shared<ScalarEchelon>(scalar_echelon(std::move(aug), n));
    require(ech->stuck.empty(), "push-out coordinate solve failed");

    size_t nk = ext.k_gens.size();
    auto chis = std::make_shared<std::vector<Scalar>>(chi);
    Pushout p;
    p.h_chi = h_chi;
    p.complement = complement;
    size_t ncomp = complement.size();
    p.map_vector = [ech, chis, h_chi, n, nk, ncomp, ring](const std::vector<Scalar>& v) {
        require(v.size() == n, "push-out map expects Vt coordinates");
        std::vector<Scalar> ext_v(n + nk + ncomp, Scalar(ring));
        for (size_t c = 0; c < n; ++c)
            ext_v[c] = v[c];
        std::vector<Scalar> rem = scalar_reduce(*ech, ext_v);
        for (size_t c = 0; c < n; ++c)
            require(rem[c].is_zero(), "vector is outside the extension span");
        std::vector<Scalar> out(ncomp + 1, Scalar(ring));
        for (size_t i = 0; i < nk; ++i)
            out[0] = out[0] - rem[n + i] * (*chis)[i];
        for (size_t a = 0; a < ncomp; ++a)
            out[a + 1] = -rem[n + nk + a];
        return out;
    };
    return p;
}

Subspace pushout_subspace(const Pushout& p, const CentralExtension& ext,
                          const std::vector<std::vector<Scalar>>& gens_in_vt, const Mode& mode) {
    const BaseRingPtr& ring = ext.wt->ring();
    size_t rk = flat_rank(ext.k_gens, ext.wt->dim(), ring, mode);
    size_t rg = flat_rank(gens_in_vt, ext.wt->dim(), ring, mode);
    std::vector<std::vector<Scalar>> both = ext.k_gens;
    both.insert(both.end(), gens_in_vt.begin(), gens_in_vt.end());
    require(flat_rank(both, ext.wt->dim(), ring, mode) == rk + rg,
            "subspace meets K nontrivially");
    std::vector<std::vector<Scalar>> gens;
    for (const auto& g : gens_in_vt)
        gens.push_back(p.map_vector(g));
    return Subspace::make(p.h_chi, std::move(gens), "pushout");
}

} // namespace hcx
