#include "hcx/chart.hpp"

#include "hcx/error.hpp"
#include "hcx/supermatrix.hpp"

#include <algorithm>
#include <functional>

namespace hcx {

namespace {

// Solve the pairing constraints pair(a_k, u) = t_k for a vector u in V,
// over the flattened field; returns the pivot-based solution.
std::vector<Scalar> solve_by_pairs(const Heisenberg& h,
                                   const std::vector<std::vector<Scalar>>& constraints,
                                   const std::vector<Scalar>& targets, const Mode& mode) {
    size_t n = h.vdim();
    const BaseRingPtr& ring = h.ring();
    size_t nmasks = size_t(1) << (ring ? ring->num_odd() : 0);
    size_t ncols = n * nmasks;
    size_t nrows = constraints.size() * nmasks;

    auto run = [&](auto field_tag) -> std::vector<Scalar> {
        using F = decltype(field_tag);
        Mat<F> m(nrows, ncols);
        std::vector<F> rhs(nrows, F(0));
        for (size_t k = 0; k < constraints.size(); ++k) {
            for (size_t c = 0; c < n; ++c)
                for (uint64_t mask = 0; mask < nmasks; ++mask) {
                    std::vector<Scalar> cand = h.zero_vector();
                    Scalar coeff(ring);
                    coeff.set_term(mask, RatFun(1));
                    cand[c + 1] = coeff;
                    Scalar p = h.pair(constraints[k], cand);
                    for (const auto& [tm, cc] : p.terms()) {
                        if constexpr (std::is_same_v<F, Rational>)
                            m.at(k * nmasks + tm, c * nmasks + mask) = to_point_field(cc, mode);
                        else
                            m.at(k * nmasks + tm, c * nmasks + mask) = cc;
                    }
                }
            for (const auto& [tm, cc] : targets[k].terms()) {
                if constexpr (std::is_same_v<F, Rational>)
                    rhs[k * nmasks + tm] = to_point_field(cc, mode);
                else
                    rhs[k * nmasks + tm] = cc;
            }
        }
        auto sol = solve_linear(m, rhs);
        require(sol.has_value(), "pairing constraints are inconsistent");
        std::vector<Scalar> u = h.zero_vector();
        for (size_t c = 0; c < n; ++c)
            for (uint64_t mask = 0; mask < nmasks; ++mask) {
                const F& v = (*sol)[c * nmasks + mask];
                if (v == F(0))
                    continue;
                if constexpr (std::is_same_v<F, Rational>)
                    u[c + 1].set_term(mask, RatFun(v));
                else
                    u[c + 1].set_term(mask, v);
            }
        return u;
    };
    if (mode.point)
        return run(Rational(0));
    return run(RatFun(0));
}

} // namespace

size_t Chart::i0_index(size_t k) const {
    return side_ == Side::Right ? k : vprime_.size() + duals_.size() + k;
}
size_t Chart::vprime_index(size_t k) const {
    return side_ == Side::Right ? i0_.size() + k : k;
}
size_t Chart::dual_index(size_t k) const {
    return side_ == Side::Right ? i0_.size() + vprime_.size() + k : vprime_.size() + k;
}
bool Chart::is_i0_index(size_t g) const {
    return side_ == Side::Right ? g < i0_.size() : g >= vprime_.size() + duals_.size();
}
size_t Chart::i0_position(size_t g) const {
    return side_ == Side::Right ? g : g - vprime_.size() - duals_.size();
}

WeylElement Chart::graph_generator(size_t k) const {
    WeylElement g = weyl_->generator(i0_index(k));
    for (size_t j = 0; j < duals_.size(); ++j)
        if (!phi_[j][k].is_zero())
            g += weyl_->generator(dual_index(j)).scaled(phi_[j][k]);
    for (size_t j = 0; j < vprime_.size(); ++j)
        if (!psi_[j][k].is_zero())
            g += weyl_->generator(vprime_index(j)).scaled(psi_[j][k]);
    if (!lambda_[k].is_zero())
        g += weyl_->constant(lambda_[k]);
    return g;
}

void Chart::finish_setup() {
    size_t r = i0_.size(), s = vprime_.size();
    // Reduction images: -(phi + psi + lambda)(i0_k).
    red_.clear();
    for (size_t k = 0; k < r; ++k) {
        WeylElement rep = weyl_->zero();
        for (size_t j = 0; j < r; ++j)
            if (!phi_[j][k].is_zero())
                rep += weyl_->generator(dual_index(j)).scaled(phi_[j][k]);
        for (size_t j = 0; j < s; ++j)
            if (!psi_[j][k].is_zero())
                rep += weyl_->generator(vprime_index(j)).scaled(psi_[j][k]);
        if (!lambda_[k].is_zero())
            rep += weyl_->constant(lambda_[k]);
        red_.push_back(-rep);
    }
    // Express each ambient generator in the chart basis.
    size_t n = ambient_->vdim();
    const BaseRingPtr& ring = ambient_->ring();
    size_t nrows = n;
    std::vector<std::vector<Scalar>> aug(nrows, std::vector<Scalar>(n + nrows, Scalar(ring)));
    std::vector<size_t> chart_gen_of_row(nrows);
    size_t row = 0;
    auto add_row = [&](const std::vector<Scalar>& vec, size_t gen) {
        for (size_t c = 0; c < n; ++c)
            aug[row][c] = vec[c];
        aug[row][n + row] = Scalar::constant(ring, 1);
        chart_gen_of_row[row] = gen;
        ++row;
    };
    for (size_t k = 0; k < i0_.size(); ++k)
        add_row(i0_[k], i0_index(k));
    for (size_t k = 0; k < vprime_.size(); ++k)
        add_row(vprime_[k], vprime_index(k));
    for (size_t k = 0; k < duals_.size(); ++k)
        add_row(duals_[k], dual_index(k));
    require(row == nrows, "chart decomposition does not have full rank");
    ScalarEchelon ech = scalar_echelon(std::move(aug), n);
    require(ech.stuck.empty(), "chart decomposition is not invertible over the ring");

    ambient_images_.clear();
    for (size_t b = 0; b < n; ++b) {
        std::vector<Scalar> unit(n + nrows, Scalar(ring));
        unit[b] = Scalar::constant(ring, 1);
        std::vector<Scalar> rem = scalar_reduce(ech, unit);
        for (size_t c = 0; c < n; ++c)
            require(rem[c].is_zero(), "chart decomposition does not span V");
        WeylElement img = weyl_->zero();
        for (size_t rr = 0; rr < nrows; ++rr) {
            Scalar coeff = -rem[n + rr];
            if (!coeff.is_zero())
                img += weyl_->generator(chart_gen_of_row[rr]).scaled(coeff);
        }
        ambient_images_.push_back(img);
    }
}

void Chart::validate() const {
    for (size_t a = 0; a < i0_.size(); ++a)
        for (size_t b = a; b < i0_.size(); ++b) {
            WeylElement ga = graph_generator(a), gb = graph_generator(b);
            auto pa = ga.parity(), pb = gb.parity();
            require(pa.has_value() && pb.has_value(), "graph generator is not homogeneous");
            if (a == b && *pa == Parity::Even)
                continue;
            WeylElement c = ga.supercommutator(gb);
            require(c.is_zero(), "graph data violates isotropy: [g" + std::to_string(a + 1) +
                                     ", g" + std::to_string(b + 1) + "] = " + c.str());
        }
}

WeylElement Chart::to_chart(const WeylElement& ambient_elt) const {
    return ambient_->weyl()->substitute(ambient_elt, weyl_, ambient_images_);
}

WeylElement Chart::to_chart_vector(const std::vector<Scalar>& hvec) const {
    WeylElement e = weyl_->constant(hvec[0]);
    for (size_t j = 0; j + 1 < hvec.size(); ++j)
        if (!hvec[j + 1].is_zero())
            e += ambient_images_[j].scaled(hvec[j + 1]);
    return e;
}

WeylElement Chart::reduce(const WeylElement& elt) const {
    WeylElement cur = elt;
    for (;;) {
        const Word* bad = nullptr;
        Scalar coeff;
        for (const auto& [w, c] : cur.terms()) {
            bool has = side_ == Side::Right ? (!w.empty() && is_i0_index(w.front()))
                                            : (!w.empty() && is_i0_index(w.back()));
            if (has) {
                bad = &w;
                coeff = c;
                break;
            }
        }
        if (!bad)
            return cur;
        Word w = *bad;
        cur.set_term(w, Scalar(ring()));
        if (side_ == Side::Right) {
            size_t k = i0_position(w.front());
            Word rest(w.begin() + 1, w.end());
            // c * (i0_k * rest) == c * (red_k * rest) mod I*U(H)
            cur += (red_[k] * weyl_->monomial(rest, Scalar::constant(ring(), 1))).scaled(coeff);
        } else {
            size_t k = i0_position(w.back());
            Word rest(w.begin(), w.end() - 1);
            // c * (rest * i0_k) == c * (rest * red_k) mod U(H)*I
            cur += (weyl_->monomial(rest, Scalar::constant(ring(), 1)) * red_[k]).scaled(coeff);
        }
    }
}

bool Chart::is_complement_word(const Word& w) const {
    for (uint16_t g : w)
        if (is_i0_index(g))
            return false;
    return true;
}

std::vector<Word> Chart::model_basis(int n) const {
    std::vector<uint16_t> letters;
    for (size_t g = 0; g < weyl_->dim(); ++g)
        if (!is_i0_index(g))
            letters.push_back(static_cast<uint16_t>(g));
    std::sort(letters.begin(), letters.end());
    std::vector<Word> out;
    Word cur;
    std::function<void(size_t, int)> rec = [&](size_t pos, int remaining) {
        out.push_back(cur);
        if (remaining == 0)
            return;
        for (size_t i = pos; i < letters.size(); ++i) {
            uint16_t g = letters[i];
            if (weyl_->parity(g) == Parity::Odd && !cur.empty() && cur.back() == g)
                continue;
            cur.push_back(g);
            rec(i, remaining - 1);
            cur.pop_back();
        }
    };
    rec(0, n);
    std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::shared_ptr<const Chart> Chart::make_explicit(
    HeisenbergPtr ambient, Side side, std::vector<std::vector<Scalar>> i0,
    std::vector<std::vector<Scalar>> duals, std::vector<std::vector<Scalar>> vprime,
    std::vector<std::vector<Scalar>> phi, std::vector<std::vector<Scalar>> psi,
    std::vector<Scalar> lambda) {
    auto chart = std::shared_ptr<Chart>(new Chart());
    chart->ambient_ = std::move(ambient);
    chart->side_ = side;
    chart->i0_ = std::move(i0);
    chart->duals_ = std::move(duals);
    chart->vprime_ = std::move(vprime);
    chart->phi_ = std::move(phi);
    chart->psi_ = std::move(psi);
    chart->lambda_ = std::move(lambda);

    const Heisenberg& h = *chart->ambient_;
    size_t r = chart->i0_.size(), s = chart->vprime_.size();
    require(chart->duals_.size() == r, "chart needs one dual per I0 generator");
    require(chart->phi_.size() == r, "phi must be r x r");
    for (const auto& rowv : chart->phi_)
        require(rowv.size() == r, "phi must be r x r");
    require(chart->psi_.size() == s, "psi must be s x r");
    for (const auto& rowv : chart->psi_)
        require(rowv.size() == r, "psi must be s x r");
    require(chart->lambda_.size() == r, "lambda must have r entries");

    size_t n = h.vdim();
    require(2 * r + s == n, "chart decomposition has wrong total rank");
    auto lift = [&](const std::vector<Scalar>& v) {
        std::vector<Scalar> hv = h.zero_vector();
        for (size_t c = 0; c < n; ++c)
            hv[c + 1] = v[c];
        return hv;
    };
    std::vector<BasisVector> basis(n);
    auto name_of = [&](const std::vector<Scalar>& vec, const std::string& fallback) {
        int hit = -1;
        for (size_t c = 0; c < n; ++c) {
            if (vec[c].is_zero())
                continue;
            if (hit >= 0 || !vec[c].is_one())
                return fallback;
            hit = static_cast<int>(c);
        }
        return hit >= 0 ? h.weyl()->basis(hit).name : fallback;
    };
    auto put = [&](size_t idx, const std::vector<Scalar>& vec, const std::string& fallback) {
        auto par = vector_parity(h, lift(vec));
        require(par.has_value(), "chart vector is not homogeneous");
        basis[idx] = BasisVector{name_of(vec, fallback), *par};
    };
    for (size_t k = 0; k < r; ++k)
        put(chart->i0_index(k), chart->i0_[k], "a" + std::to_string(k + 1));
    for (size_t k = 0; k < s; ++k)
        put(chart->vprime_index(k), chart->vprime_[k], "f" + std::to_string(k + 1));
    for (size_t k = 0; k < r; ++k)
        put(chart->dual_index(k), chart->duals_[k], "b" + std::to_string(k + 1));

    std::vector<std::vector<Scalar>> gram(n, std::vector<Scalar>(n, Scalar(h.ring())));
    std::vector<const std::vector<Scalar>*> by_index(n);
    for (size_t k = 0; k < r; ++k)
        by_index[chart->i0_index(k)] = &chart->i0_[k];
    for (size_t k = 0; k < s; ++k)
        by_index[chart->vprime_index(k)] = &chart->vprime_[k];
    for (size_t k = 0; k < r; ++k)
        by_index[chart->dual_index(k)] = &chart->duals_[k];
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            gram[a][b] = h.pair(lift(*by_index[a]), lift(*by_index[b]));
    for (size_t a = 0; a < r; ++a) {
        for (size_t b = 0; b < r; ++b) {
            const Scalar& p = gram[chart->dual_index(b)][chart->i0_index(a)];
            require(a == b ? p.is_one() : p.is_zero(), "duals do not pair to the identity");
            require(gram[chart->i0_index(a)][chart->i0_index(b)].is_zero(), "I0 is not isotropic");
            require(gram[chart->dual_index(a)][chart->dual_index(b)].is_zero(),
                    "the dual complement is not isotropic");
        }
        for (size_t k = 0; k < s; ++k) {
            require(gram[chart->i0_index(a)][chart->vprime_index(k)].is_zero(),
                    "V' is not orthogonal to I0");
            require(gram[chart->dual_index(a)][chart->vprime_index(k)].is_zero(),
                    "V' is not orthogonal to the duals");
        }
    }
    chart->weyl_ = WeylAlgebra::create(h.ring(), std::move(basis), std::move(gram));
    chart->finish_setup();
    chart->validate();
    return chart;
}

std::shared_ptr<const Chart> Chart::from_subspace(const Subspace& iso, Side side,
                                                  const Mode& mode) {
    require(is_isotropic(iso), "chart requires an isotropic subspace: " + isotropy_witness(iso));
    const Heisenberg& h = *iso.ambient;
    const BaseRingPtr& ring = h.ring();
    size_t n = h.vdim();

    std::vector<std::vector<Scalar>> pi_gens;
    for (const auto& g : iso.gens)
        pi_gens.push_back(pi(g));
    ScalarEchelon piech = scalar_echelon(pi_gens);
    require(piech.stuck.empty(), "pi(I) is not a free direct summand over the ring");
    std::vector<std::vector<Scalar>> w = piech.basis;
    size_t r = w.size();
    require(r == iso.count(), "subspace is not transversal to the center");

    auto lift = [&](const std::vector<Scalar>& v) {
        std::vector<Scalar> hv = h.zero_vector();
        for (size_t c = 0; c < n; ++c)
            hv[c + 1] = v[c];
        return hv;
    };

    // Dual isotropic complement, one hyperbolic pair at a time.
    std::vector<std::vector<Scalar>> duals;
    for (size_t k = 0; k < r; ++k) {
        std::vector<std::vector<Scalar>> constraints;
        std::vector<Scalar> targets;
        for (size_t j = 0; j < r; ++j) {
            constraints.push_back(lift(w[j]));
            int delta = j == k ? 1 : 0;
            // We need (u_k, w_j) = delta, i.e. (w_j, u_k) = -(-1)^{|w||u|} delta.
            auto wpar = vector_parity(h, lift(w[j]));
            require(wpar.has_value(), "pi(I) basis vector is not homogeneous");
            targets.push_back(Scalar::constant(ring, *wpar == Parity::Odd ? delta : -delta));
        }
        for (size_t l = 0; l < duals.size(); ++l) {
            constraints.push_back(lift(duals[l]));
            targets.push_back(Scalar(ring));
        }
        std::vector<Scalar> u = pi(solve_by_pairs(h, constraints, targets, mode));
        auto par = vector_parity(h, lift(u));
        require(par.has_value(), "dual candidate is not homogeneous");
        if (*par == Parity::Odd) {
            Scalar self = h.pair(lift(u), lift(u));
            if (!self.is_zero()) {
                Scalar alpha = -self.scaled(RatFun(Rational(1, 2)));
                for (size_t c = 0; c < n; ++c)
                    u[c] = u[c] + alpha * w[k][c];
            }
        }
        duals.push_back(std::move(u));
    }

    // V' = perp of span(w, duals) inside V.
    std::vector<std::vector<Scalar>> span_vecs;
    for (const auto& v : w)
        span_vecs.push_back(lift(v));
    for (const auto& v : duals)
        span_vecs.push_back(lift(v));
    Subspace wd = Subspace::make(iso.ambient, span_vecs, "chart-span");
    Subspace vp = perp_in_v(wd, mode);
    std::vector<std::vector<Scalar>> vprime;
    for (const auto& g : vp.gens)
        vprime.push_back(pi(g));
    require(2 * r + vprime.size() == n, "chart decomposition has wrong total rank");

    // Graph data: coordinates of the generators of I over the chart basis.
    size_t nrows = n;
    std::vector<std::vector<Scalar>> aug(nrows, std::vector<Scalar>(n + nrows, Scalar(ring)));
    size_t row = 0;
    auto add_row = [&](const std::vector<Scalar>& vec) {
        for (size_t c = 0; c < n; ++c)
            aug[row][c] = vec[c];
        aug[row][n + row] = Scalar::constant(ring, 1);
        ++row;
    };
    for (const auto& v : w)
        add_row(v);
    for (const auto& v : vprime)
        add_row(v);
    for (const auto& v : duals)
        add_row(v);
    ScalarEchelon ech = scalar_echelon(std::move(aug), n);
    require(ech.stuck.empty(), "chart change of basis is not invertible");

    size_t s = vprime.size();
    std::vector<std::vector<Scalar>> A(iso.count(), std::vector<Scalar>(r, Scalar(ring)));
    std::vector<std::vector<Scalar>> Psi0(iso.count(), std::vector<Scalar>(s, Scalar(ring)));
    std::vector<std::vector<Scalar>> Phi0(iso.count(), std::vector<Scalar>(r, Scalar(ring)));
    std::vector<Scalar> Lam0(iso.count(), Scalar(ring));
    for (size_t g = 0; g < iso.count(); ++g) {
        std::vector<Scalar> ext(n + nrows, Scalar(ring));
        auto pig = pi(iso.gens[g]);
        for (size_t c = 0; c < n; ++c)
            ext[c] = pig[c];
        std::vector<Scalar> rem = scalar_reduce(ech, ext);
        for (size_t c = 0; c < n; ++c)
            require(rem[c].is_zero(), "generator is outside the chart span");
        for (size_t j = 0; j < r; ++j)
            A[g][j] = -rem[n + j];
        for (size_t j = 0; j < s; ++j)
            Psi0[g][j] = -rem[n + r + j];
        for (size_t j = 0; j < r; ++j)
            Phi0[g][j] = -rem[n + r + s + j];
        Lam0[g] = iso.gens[g][0];
    }
    // Normalize the I0 block to the identity: with C = A^-1 the combination
    // g'_k = sum_g C[k][g] gen_g has pi-part w_k, since (C A)[k][j] = delta.
    auto Ainv = scalar_inverse(A, ring);
    std::vector<std::vector<Scalar>> phi(r, std::vector<Scalar>(r, Scalar(ring)));
    std::vector<std::vector<Scalar>> psi(s, std::vector<Scalar>(r, Scalar(ring)));
    std::vector<Scalar> lambda(r, Scalar(ring));
    for (size_t k = 0; k < r; ++k)
        for (size_t g = 0; g < iso.count(); ++g) {
            for (size_t j = 0; j < r; ++j)
                phi[j][k] = phi[j][k] + Ainv[k][g] * Phi0[g][j];
            for (size_t j = 0; j < s; ++j)
                psi[j][k] = psi[j][k] + Ainv[k][g] * Psi0[g][j];
            lambda[k] = lambda[k] + Ainv[k][g] * Lam0[g];
        }

    return make_explicit(iso.ambient, side, std::move(w), std::move(duals), std::move(vprime),
                         std::move(phi), std::move(psi), std::move(lambda));
}

} // namespace hcx
