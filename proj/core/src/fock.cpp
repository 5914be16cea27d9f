#include "hcx/fock.hpp"

#include "hcx/error.hpp"

namespace hcx {

FockModule::FockModule(ChartPtr chart, int validate_degree) : chart_(std::move(chart)) {
    if (validate_degree > 0)
        validate(validate_degree);
}

FockModule FockModule::for_subspace(const Subspace& iso, Side side, const Mode& mode,
                                    int validate_degree) {
    return FockModule(Chart::from_subspace(iso, side, mode), validate_degree);
}

WeylElement FockModule::act(const WeylElement& ambient_elt, const WeylElement& v) const {
    WeylElement w = chart_->to_chart(ambient_elt);
    if (side() == Side::Left)
        return chart_->reduce(w * v);
    return chart_->reduce(v * w);
}

WeylElement FockModule::act_opposite(const WeylElement& ambient_elt, const WeylElement& v) const {
    WeylElement w = chart_->to_chart(ambient_elt);
    if (side() == Side::Left)
        return chart_->reduce(v * w);
    return chart_->reduce(w * v);
}

WeylElement FockModule::act_vector(const std::vector<Scalar>& hvec, const WeylElement& v) const {
    WeylElement w = chart_->to_chart_vector(hvec);
    if (side() == Side::Left)
        return chart_->reduce(w * v);
    return chart_->reduce(v * w);
}

void FockModule::validate(int degree) const {
    const Heisenberg& h = *chart_->ambient();
    auto monomials = basis(degree);

    // The vacuum is killed by the defining subspace on the correct side.
    for (size_t k = 0; k < chart_->i0_rank(); ++k) {
        WeylElement g = chart_->graph_generator(k);
        WeylElement hit = side() == Side::Left ? chart_->reduce(g * vacuum())
                                               : chart_->reduce(vacuum() * g);
        require(hit.is_zero(), "vacuum is not annihilated by the defining subspace");
    }

    // Replay the defining relations through the action tables: for the left
    // action a.(b.m) -+ b.(a.m) = (a,b) m, and the mirror identity on the
    // right, for all ambient generator pairs.
    for (size_t i = 0; i < h.vdim(); ++i)
        for (size_t j = 0; j <= i; ++j) {
            WeylElement gi = h.weyl()->generator(i), gj = h.weyl()->generator(j);
            bool both_odd =
                h.weyl()->parity(i) == Parity::Odd && h.weyl()->parity(j) == Parity::Odd;
            Scalar form = h.weyl()->gram(i, j);
            for (const auto& w : monomials) {
                WeylElement m = chart_->weyl()->monomial(w, Scalar::constant(ring(), 1));
                WeylElement lhs;
                if (side() == Side::Left) {
                    lhs = act(gi, act(gj, m));
                    WeylElement rhs = act(gj, act(gi, m));
                    lhs = both_odd ? lhs + rhs : lhs - rhs;
                } else {
                    // (m.g_j).g_i -+ (m.g_i).g_j = m.(g_j g_i -+ g_i g_j) = (g_j, g_i) m
                    lhs = act(gi, act(gj, m));
                    WeylElement rhs = act(gj, act(gi, m));
                    lhs = both_odd ? lhs + rhs : lhs - rhs;
                }
                Scalar expect = side() == Side::Left ? form : h.weyl()->gram(j, i);
                WeylElement target = m.scaled(expect);
                require(lhs == target, "action table violates the defining relation for (" +
                                           h.weyl()->basis(i).name + "," +
                                           h.weyl()->basis(j).name + ")");
            }
        }
}

ModuleModel ModuleModel::from_fock(const FockModule& fock) {
    ModuleModel m;
    m.ambient = fock.chart()->ambient();
    m.model = fock.chart()->weyl();
    ChartPtr chart = fock.chart();
    m.basis = [chart](int n) { return chart->model_basis(n); };
    FockModule copy = fock;
    m.act = [copy](const std::vector<Scalar>& hvec, const WeylElement& v) {
        return copy.act_vector(hvec, v);
    };
    m.vac = fock.vacuum();
    auto [p, q] = fock.chart()->weyl()->super_dims();
    if (p == 0) {
        m.finite = true;
        // complement letters are all odd
        m.finite_degree = static_cast<int>(fock.chart()->weyl()->dim() - fock.chart()->i0_rank());
    }
    return m;
}

ModuleModel ModuleModel::regular(const HeisenbergPtr& h) {
    ModuleModel m;
    m.ambient = h;
    m.model = h->weyl();
    WeylAlgebraPtr w = h->weyl();
    auto [p, q] = w->super_dims();
    require(p == 0, "the regular module model is implemented for purely odd V");
    m.basis = [w](int n) {
        std::vector<Word> out;
        std::function<void(Word&, size_t, int)> rec = [&](Word& cur, size_t pos, int remaining) {
            out.push_back(cur);
            if (remaining == 0)
                return;
            for (size_t g = pos; g < w->dim(); ++g) {
                cur.push_back(static_cast<uint16_t>(g));
                rec(cur, g + 1, remaining - 1);
                cur.pop_back();
            }
        };
        Word cur;
        rec(cur, 0, std::min<int>(n, static_cast<int>(w->dim())));
        std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
            if (a.size() != b.size())
                return a.size() < b.size();
            return a < b;
        });
        return out;
    };
    HeisenbergPtr hh = h;
    m.act = [hh](const std::vector<Scalar>& hvec, const WeylElement& v) {
        return hh->element(hvec) * v;
    };
    m.vac = w->one();
    m.finite = true;
    m.finite_degree = static_cast<int>(w->dim());
    return m;
}

namespace {

template <class F>
InvariantsResult invariants_impl(const ModuleModel& m, const Subspace& i, int n,
                                 const Mode& mode) {
    const BaseRingPtr& ring = m.ambient->ring();
    std::vector<Word> full = m.basis(n + 1);
    std::map<Word, size_t> index;
    for (size_t k = 0; k < full.size(); ++k)
        index[full[k]] = k;
    size_t nmasks = size_t(1) << (ring ? ring->num_odd() : 0);
    FlatIndex cod(full.size(), ring);

    InvariantsResult out;
    std::vector<Word> level_words;
    Mat<F> kernel_rows; // kernel at the last level processed
    size_t level_start = 0;
    (void)level_start;
    for (int d = 0; d <= n; ++d) {
        std::vector<Word> dom = m.basis(d);
        Mat<F> mat(i.count() * cod.size(), dom.size() * nmasks);
        for (size_t c = 0; c < dom.size(); ++c) {
            for (uint64_t mask = 0; mask < nmasks; ++mask) {
                Scalar coeff(ring);
                coeff.set_term(mask, RatFun(1));
                WeylElement v = m.model->monomial(dom[c], coeff);
                for (size_t g = 0; g < i.count(); ++g) {
                    WeylElement img = m.act(i.gens[g], v);
                    for (const auto& [w, s] : img.terms()) {
                        auto it = index.find(w);
                        require(it != index.end(), "action left the module window");
                        for (const auto& [tm, cc] : s.terms()) {
                            F val;
                            if constexpr (std::is_same_v<F, Rational>)
                                val = to_point_field(cc, mode);
                            else
                                val = cc;
                            mat.at(g * cod.size() + cod.index(it->second, tm),
                                   c * nmasks + mask) = val;
                        }
                    }
                }
            }
        }
        Mat<F> ker = kernel_of(mat);
        out.dims.push_back(ker.rows);
        if (d == n) {
            level_words = dom;
            kernel_rows = ker;
        }
    }
    // Representatives at the top level.
    for (size_t r = 0; r < kernel_rows.rows; ++r) {
        WeylElement v(m.model);
        for (size_t c = 0; c < level_words.size(); ++c) {
            Scalar s(ring);
            for (uint64_t mask = 0; mask < nmasks; ++mask) {
                const F& val = kernel_rows.at(r, c * nmasks + mask);
                if (val == F(0))
                    continue;
                if constexpr (std::is_same_v<F, Rational>)
                    s.set_term(mask, RatFun(val));
                else
                    s.set_term(mask, val);
            }
            if (!s.is_zero())
                v += m.model->monomial(level_words[c], s);
        }
        if (!v.is_zero())
            out.basis.push_back(std::move(v));
    }
    return out;
}

} // namespace

InvariantsResult invariants(const ModuleModel& m, const Subspace& i, int n, const Mode& mode) {
    if (mode.point)
        return invariants_impl<Rational>(m, i, n, mode);
    return invariants_impl<RatFun>(m, i, n, mode);
}

namespace {

template <class F>
CliffordFactorization clifford_impl(const ModuleModel& m, const Subspace& lag, const Mode& mode) {
    require(m.finite, "Clifford factorization needs a finite module");
    const BaseRingPtr& ring = m.ambient->ring();
    auto [p, q] = m.ambient->weyl()->super_dims();
    require(p == 0, "Clifford factorization requires purely odd V");

    int n = m.finite_degree;
    InvariantsResult inv = invariants(m, lag, n, mode);

    FockModule ml = FockModule::for_subspace(lag, Side::Left, mode);
    std::vector<Word> ml_basis = ml.basis(static_cast<int>(ml.chart()->weyl()->dim()));
    std::vector<Word> m_basis = m.basis(n);
    std::map<Word, size_t> index;
    for (size_t k = 0; k < m_basis.size(); ++k)
        index[m_basis[k]] = k;

    FlatIndex cod(m_basis.size(), ring);
    CliffordFactorization out;
    out.dim_m = cod.size();
    out.dim_ml = ml_basis.size(); // module rank 2^m of M(L)
    out.dim_inv = inv.dims.empty() ? 0 : inv.dims.back();

    // Bilinear map over the base: (u, s) -> lift(u).s with u running over
    // the 2^m model words of M(L) and s over the flattened invariants basis.
    if (out.dim_ml * out.dim_inv != out.dim_m)
        return out; // dimension identity already fails
    Mat<F> map(out.dim_m, out.dim_m);
    size_t col = 0;
    for (const auto& uw : ml_basis)
        for (const auto& s : inv.basis) {
            WeylElement acc = s;
            const Chart& chart = *ml.chart();
            for (size_t pos = uw.size(); pos-- > 0;) {
                uint16_t g = uw[pos];
                std::vector<Scalar> amb = m.ambient->zero_vector();
                const std::vector<Scalar>* vvec = nullptr;
                for (size_t k = 0; k < chart.vprime_rank(); ++k)
                    if (chart.vprime_index(k) == g)
                        vvec = &chart.vprime_vectors()[k];
                for (size_t k = 0; k < chart.i0_rank(); ++k)
                    if (chart.dual_index(k) == g)
                        vvec = &chart.dual_vectors()[k];
                require(vvec != nullptr, "model word contains a defining letter");
                for (size_t c = 0; c < m.ambient->vdim(); ++c)
                    amb[c + 1] = (*vvec)[c];
                acc = m.act(amb, acc);
            }
            for (const auto& [w, sc] : acc.terms()) {
                auto it = index.find(w);
                require(it != index.end(), "factorization image left the module window");
                for (const auto& [tm, cc] : sc.terms()) {
                    F val;
                    if constexpr (std::is_same_v<F, Rational>)
                        val = to_point_field(cc, mode);
                    else
                        val = cc;
                    map.at(cod.index(it->second, tm), col) = val;
                }
            }
            ++col;
        }
    require(col == out.dim_m, "factorization map has wrong shape");
    out.bijective = rank_of(map) == out.dim_m;
    return out;
}

} // namespace

CliffordFactorization clifford_factorize(const ModuleModel& m, const Subspace& lag,
                                         const Mode& mode) {
    if (mode.point)
        return clifford_impl<Rational>(m, lag, mode);
    return clifford_impl<RatFun>(m, lag, mode);
}

} // namespace hcx
