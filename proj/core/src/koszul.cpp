#include "hcx/koszul.hpp"

#include "hcx/error.hpp"

#include <algorithm>
#include <functional>

namespace hcx {

std::vector<WedgeMono> wedge_basis(const Subspace& i, int k) {
    std::vector<WedgeMono> out;
    WedgeMono cur(i.count(), 0);
    std::function<void(size_t, int)> rec = [&](size_t pos, int remaining) {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        if (pos >= i.count())
            return;
        int cap = i.parities[pos] == Parity::Even ? 1 : remaining;
        for (int e = 0; e <= cap; ++e) {
            cur[pos] = e;
            rec(pos + 1, remaining - e);
        }
        cur[pos] = 0;
    };
    rec(0, k);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::vector<size_t> expand_letters(const WedgeMono& w) {
    std::vector<size_t> letters;
    for (size_t g = 0; g < w.size(); ++g)
        for (int e = 0; e < w[g]; ++e)
            letters.push_back(g);
    return letters;
}

struct ChainBasis {
    std::vector<WedgeMono> wedges;
    std::vector<Word> words;
    std::map<WedgeMono, size_t> wedge_index;
    std::map<Word, size_t> word_index;
    size_t nmasks = 1;

    size_t size() const { return wedges.size() * words.size() * nmasks; }
    size_t index(size_t w, size_t m, uint64_t mask) const {
        return (w * words.size() + m) * nmasks + mask;
    }
};

ChainBasis chain_basis(const Subspace& i, const ModuleModel& m, int k, int n) {
    ChainBasis b;
    b.wedges = wedge_basis(i, k);
    b.words = m.basis(n);
    for (size_t x = 0; x < b.wedges.size(); ++x)
        b.wedge_index[b.wedges[x]] = x;
    for (size_t x = 0; x < b.words.size(); ++x)
        b.word_index[b.words[x]] = x;
    const BaseRingPtr& ring = m.ambient->ring();
    b.nmasks = size_t(1) << (ring ? ring->num_odd() : 0);
    return b;
}

} // namespace

Koszul::Koszul(Subspace i, ModuleModel m, Mode mode)
    : i_(std::move(i)), m_(std::move(m)), mode_(std::move(mode)) {
    require(is_isotropic(i_), "Koszul complex needs an isotropic subspace: " +
                                  isotropy_witness(i_));
}

Koszul::Chain Koszul::differential(const Chain& c) const {
    Chain out;
    for (const auto& [wedge, mpart] : c) {
        auto letters = expand_letters(wedge);
        for (size_t pos = 0; pos < letters.size(); ++pos) {
            size_t g = letters[pos];
            int tail_odd = 0;
            for (size_t q = pos + 1; q < letters.size(); ++q)
                if (i_.parities[letters[q]] == Parity::Odd)
                    ++tail_odd;
            int sign = ((pos + 1) % 2 == 0 ? 1 : -1);
            if (i_.parities[g] == Parity::Odd && tail_odd % 2 == 1)
                sign = -sign;
            WeylElement img = m_.act(i_.gens[g], mpart);
            if (img.is_zero())
                continue;
            if (sign < 0)
                img = -img;
            WedgeMono smaller = wedge;
            smaller[g] -= 1;
            auto it = out.find(smaller);
            if (it == out.end())
                out[smaller] = img;
            else {
                it->second += img;
                if (it->second.is_zero())
                    out.erase(it);
            }
        }
    }
    return out;
}

bool Koszul::d_squared_zero(int k, int n) const {
    const BaseRingPtr& ring = m_.ambient->ring();
    size_t nmasks = size_t(1) << (ring ? ring->num_odd() : 0);
    for (const auto& wedge : wedge_basis(i_, k))
        for (const auto& word : m_.basis(n))
            for (uint64_t mask = 0; mask < nmasks; ++mask) {
                Scalar coeff(ring);
                coeff.set_term(mask, RatFun(1));
                Chain c;
                c[wedge] = m_.model->monomial(word, coeff);
                Chain dd = differential(differential(c));
                for (const auto& [w2, v2] : dd)
                    if (!v2.is_zero())
                        return false;
            }
    return true;
}

template <class F>
size_t Koszul::d_rank(int k, int n) const {
    if (k <= 0 || n < 0)
        return 0;
    ChainBasis dom = chain_basis(i_, m_, k, n);
    ChainBasis cod = chain_basis(i_, m_, k - 1, n + 1);
    if (dom.size() == 0)
        return 0;
    const BaseRingPtr& ring = m_.ambient->ring();
    Mat<F> mat(cod.size(), dom.size());
    for (size_t wi = 0; wi < dom.wedges.size(); ++wi)
        for (size_t mi = 0; mi < dom.words.size(); ++mi)
            for (uint64_t mask = 0; mask < dom.nmasks; ++mask) {
                Scalar coeff(ring);
                coeff.set_term(mask, RatFun(1));
                Chain c;
                c[dom.wedges[wi]] = m_.model->monomial(dom.words[mi], coeff);
                Chain img = differential(c);
                size_t col = dom.index(wi, mi, mask);
                for (const auto& [wedge, v] : img) {
                    auto wit = cod.wedge_index.find(wedge);
                    require(wit != cod.wedge_index.end(), "differential left the wedge window");
                    for (const auto& [word, s] : v.terms()) {
                        auto mit = cod.word_index.find(word);
                        require(mit != cod.word_index.end(),
                                "differential left the module window");
                        for (const auto& [tm, cc] : s.terms()) {
                            F val;
                            if constexpr (std::is_same_v<F, Rational>)
                                val = to_point_field(cc, mode_);
                            else
                                val = cc;
                            mat.at(cod.index(wit->second, mit->second, tm), col) = val;
                        }
                    }
                }
            }
    return rref(mat);
}

template <class F>
Koszul::HEntry Koszul::homology_impl(int k, int n) const {
    // Interior-band convention: cycles with representatives two degrees
    // below the cutoff, boundaries from one degree below. Classes supported
    // against the truncation edge are excluded; the N / N+1 probe flags the
    // residual uncertainty.
    const BaseRingPtr& ring = m_.ambient->ring();
    auto at = [&](int cutoff) -> std::tuple<size_t, size_t, size_t> {
        int zcap = m_.finite ? cutoff : cutoff - 2;
        int bcap = m_.finite ? cutoff : cutoff - 1;
        ChainBasis zdom = chain_basis(i_, m_, k, zcap);
        ChainBasis full = chain_basis(i_, m_, k, cutoff);
        // Kernel of d_k on the interior domain.
        ChainBasis cod = chain_basis(i_, m_, k - 1, zcap + 1);
        Mat<F> dmat(cod.size(), zdom.size());
        for (size_t wi = 0; wi < zdom.wedges.size(); ++wi)
            for (size_t mi = 0; mi < zdom.words.size(); ++mi)
                for (uint64_t mask = 0; mask < zdom.nmasks; ++mask) {
                    Scalar coeff(ring);
                    coeff.set_term(mask, RatFun(1));
                    Chain c;
                    c[zdom.wedges[wi]] = m_.model->monomial(zdom.words[mi], coeff);
                    Chain img = differential(c);
                    size_t col = zdom.index(wi, mi, mask);
                    for (const auto& [wedge, v] : img) {
                        size_t wix = cod.wedge_index.at(wedge);
                        for (const auto& [word, sc] : v.terms())
                            for (const auto& [tm, cc] : sc.terms()) {
                                F val;
                                if constexpr (std::is_same_v<F, Rational>)
                                    val = to_point_field(cc, mode_);
                                else
                                    val = cc;
                                dmat.at(cod.index(wix, cod.word_index.at(word), tm), col) = val;
                            }
                    }
                }
        Mat<F> zker = kernel_of(dmat); // rows in zdom coordinates

        // Boundary rows from degree k+1 chains below the cutoff.
        ChainBasis bdom = chain_basis(i_, m_, k + 1, bcap);
        std::vector<std::vector<F>> brows;
        for (size_t wi = 0; wi < bdom.wedges.size(); ++wi)
            for (size_t mi = 0; mi < bdom.words.size(); ++mi)
                for (uint64_t mask = 0; mask < bdom.nmasks; ++mask) {
                    Scalar coeff(ring);
                    coeff.set_term(mask, RatFun(1));
                    Chain c;
                    c[bdom.wedges[wi]] = m_.model->monomial(bdom.words[mi], coeff);
                    Chain img = differential(c);
                    std::vector<F> row(full.size(), F(0));
                    bool nz = false, fits = true;
                    for (const auto& [wedge, v] : img) {
                        auto wit = full.wedge_index.find(wedge);
                        if (wit == full.wedge_index.end()) {
                            fits = false;
                            break;
                        }
                        for (const auto& [word, sc] : v.terms()) {
                            auto mit = full.word_index.find(word);
                            if (mit == full.word_index.end()) {
                                fits = false;
                                break;
                            }
                            for (const auto& [tm, cc] : sc.terms()) {
                                F val;
                                if constexpr (std::is_same_v<F, Rational>)
                                    val = to_point_field(cc, mode_);
                                else
                                    val = cc;
                                row[full.index(wit->second, mit->second, tm)] = val;
                                nz = true;
                            }
                        }
                        if (!fits)
                            break;
                    }
                    if (nz && fits)
                        brows.push_back(std::move(row));
                }
        Mat<F> bmat(brows.size(), full.size());
        for (size_t r = 0; r < brows.size(); ++r)
            for (size_t c = 0; c < full.size(); ++c)
                bmat.at(r, c) = brows[r][c];
        size_t brank = rref(bmat);

        // Joint rank of cycles and boundaries inside the full window.
        Mat<F> both(brows.size() + zker.rows, full.size());
        for (size_t r = 0; r < brows.size(); ++r)
            for (size_t c = 0; c < full.size(); ++c)
                both.at(r, c) = brows[r][c];
        for (size_t r = 0; r < zker.rows; ++r)
            for (size_t wi = 0; wi < zdom.wedges.size(); ++wi)
                for (size_t mi = 0; mi < zdom.words.size(); ++mi)
                    for (uint64_t mask = 0; mask < zdom.nmasks; ++mask) {
                        const F& val = zker.at(r, zdom.index(wi, mi, mask));
                        if (val == F(0))
                            continue;
                        size_t wix = full.wedge_index.at(zdom.wedges[wi]);
                        size_t mix2 = full.word_index.at(zdom.words[mi]);
                        both.at(brows.size() + r, full.index(wix, mix2, mask)) = val;
                    }
        size_t jrank = rref(both);
        return {jrank - brank, zker.rows, brank};
    };
    auto [r0, z0, b0] = at(n);
    HEntry e;
    e.degree = k;
    e.cutoff = n;
    e.cycles = z0;
    e.boundaries = b0;
    e.rank = r0;
    if (m_.finite) {
        e.stabilized = true;
    } else {
        auto [r1, z1, b1] = at(n + 1);
        e.stabilized = r0 == r1;
    }
    return e;
}

Koszul::HEntry Koszul::homology(int k, int n) const {
    if (mode_.point)
        return homology_impl<Rational>(k, n);
    return homology_impl<RatFun>(k, n);
}

Koszul::HEntry Koszul::stabilized_homology(int k, int n, int ceiling) const {
    for (int cutoff = n; cutoff <= ceiling; ++cutoff) {
        HEntry e = homology(k, cutoff);
        if (e.stabilized || m_.finite)
            return e;
    }
    return homology(k, ceiling);
}

Coinvariants::Coinvariants(Subspace i, ModuleModel m, int n, Mode mode)
    : i_(std::move(i)), m_(std::move(m)), n_(n), mode_(std::move(mode)) {
    require(is_isotropic(i_), "coinvariants need an isotropic subspace: " +
                                  isotropy_witness(i_));
    words_ = m_.basis(n_);
    for (size_t k = 0; k < words_.size(); ++k)
        index_[words_[k]] = k;
    const BaseRingPtr& ring = m_.ambient->ring();
    nmasks_ = size_t(1) << (ring ? ring->num_odd() : 0);
    if (mode_.point)
        build(rat_);
    else
        build(gen_);
}

template <class F>
void Coinvariants::build(Data<F>& d) {
    const BaseRingPtr& ring = m_.ambient->ring();
    size_t ncols = words_.size() * nmasks_;
    // Every boundary whose image stays within the window contributes; rows
    // that spill over the cutoff are dropped (never creating false
    // relations, only conservative ones).
    std::vector<std::vector<F>> rowdata;
    for (size_t g = 0; g < i_.count(); ++g)
        for (const auto& w : words_)
            for (uint64_t mask = 0; mask < nmasks_; ++mask) {
                Scalar coeff(ring);
                coeff.set_term(mask, RatFun(1));
                WeylElement img = m_.act(i_.gens[g], m_.model->monomial(w, coeff));
                std::vector<F> row(ncols, F(0));
                bool fits = true, nz = false;
                for (const auto& [word, s] : img.terms()) {
                    auto it = index_.find(word);
                    if (it == index_.end()) {
                        fits = false;
                        break;
                    }
                    for (const auto& [tm, cc] : s.terms()) {
                        F val;
                        if constexpr (std::is_same_v<F, Rational>)
                            val = to_point_field(cc, mode_);
                        else
                            val = cc;
                        row[it->second * nmasks_ + tm] = val;
                        nz = true;
                    }
                }
                if (fits && nz)
                    rowdata.push_back(std::move(row));
            }
    Mat<F> rows(rowdata.size(), ncols);
    for (size_t r = 0; r < rowdata.size(); ++r)
        for (size_t c = 0; c < ncols; ++c)
            rows.at(r, c) = rowdata[r][c];
    size_t rank = rref(rows, &d.pivots);
    d.reduced = Mat<F>(rank, ncols);
    for (size_t rr = 0; rr < rank; ++rr)
        for (size_t c = 0; c < ncols; ++c)
            d.reduced.at(rr, c) = rows.at(rr, c);
    std::vector<char> is_pivot(ncols, 0);
    for (size_t c : d.pivots)
        is_pivot[c] = 1;
    for (size_t c = 0; c < ncols; ++c)
        if (!is_pivot[c])
            d.complement.push_back(c);
}

size_t Coinvariants::flat_dim() const {
    return mode_.point ? rat_.complement.size() : gen_.complement.size();
}

size_t Coinvariants::complement_size() const { return flat_dim(); }

template <class F>
WeylElement Coinvariants::project_impl(const Data<F>& d, const WeylElement& v) const {
    const BaseRingPtr& ring = m_.ambient->ring();
    size_t ncols = words_.size() * nmasks_;
    std::vector<F> vec(ncols, F(0));
    for (const auto& [word, s] : v.terms()) {
        auto it = index_.find(word);
        require(it != index_.end(), "class representative exceeds the cutoff");
        for (const auto& [tm, cc] : s.terms()) {
            if constexpr (std::is_same_v<F, Rational>)
                vec[it->second * nmasks_ + tm] = to_point_field(cc, mode_);
            else
                vec[it->second * nmasks_ + tm] = cc;
        }
    }
    for (size_t r = 0; r < d.reduced.rows; ++r) {
        F f = vec[d.pivots[r]];
        if (f == F(0))
            continue;
        for (size_t c = 0; c < ncols; ++c)
            vec[c] = vec[c] - f * d.reduced.at(r, c);
    }
    WeylElement out(m_.model);
    for (size_t k = 0; k < words_.size(); ++k) {
        Scalar s(ring);
        for (uint64_t mask = 0; mask < nmasks_; ++mask) {
            const F& c = vec[k * nmasks_ + mask];
            if (c == F(0))
                continue;
            if constexpr (std::is_same_v<F, Rational>)
                s.set_term(mask, RatFun(c));
            else
                s.set_term(mask, c);
        }
        if (!s.is_zero())
            out += m_.model->monomial(words_[k], s);
    }
    return out;
}

WeylElement Coinvariants::project(const WeylElement& v) const {
    return mode_.point ? project_impl(rat_, v) : project_impl(gen_, v);
}

WeylElement Coinvariants::vacuum_class() const { return project(m_.vac); }

std::optional<Scalar> Coinvariants::express(const WeylElement& v, const WeylElement& target) const {
    const BaseRingPtr& ring = m_.ambient->ring();
    WeylElement rv = project(v);
    auto run = [&](auto field_tag) -> std::optional<Scalar> {
        using F = decltype(field_tag);
        std::vector<WeylElement> cols;
        for (uint64_t mask = 0; mask < nmasks_; ++mask) {
            Scalar theta(ring);
            theta.set_term(mask, RatFun(1));
            cols.push_back(project(target.scaled(theta)));
        }
        size_t ncols = words_.size() * nmasks_;
        Mat<F> mat(ncols, nmasks_);
        std::vector<F> rhs(ncols, F(0));
        auto fill = [&](const WeylElement& e, auto&& put) {
            for (const auto& [word, s] : e.terms()) {
                size_t k = index_.at(word);
                for (const auto& [tm, cc] : s.terms()) {
                    F val;
                    if constexpr (std::is_same_v<F, Rational>)
                        val = to_point_field(cc, mode_);
                    else
                        val = cc;
                    put(k * nmasks_ + tm, val);
                }
            }
        };
        for (uint64_t mask = 0; mask < nmasks_; ++mask)
            fill(cols[mask], [&](size_t r, const F& val) { mat.at(r, mask) = val; });
        fill(rv, [&](size_t r, const F& val) { rhs[r] = val; });
        auto sol = solve_linear(mat, rhs);
        if (!sol)
            return std::nullopt;
        Scalar c(ring);
        for (uint64_t mask = 0; mask < nmasks_; ++mask) {
            const F& val = (*sol)[mask];
            if (val == F(0))
                continue;
            if constexpr (std::is_same_v<F, Rational>)
                c.set_term(mask, RatFun(val));
            else
                c.set_term(mask, val);
        }
        return c;
    };
    if (mode_.point)
        return run(Rational(0));
    return run(RatFun(0));
}

bool Coinvariants::certify_generator(const WeylElement& v) const {
    const BaseRingPtr& ring = m_.ambient->ring();
    auto run = [&](auto field_tag) -> bool {
        using F = decltype(field_tag);
        size_t ncols = words_.size() * nmasks_;
        Mat<F> mat(nmasks_, ncols);
        for (uint64_t mask = 0; mask < nmasks_; ++mask) {
            Scalar theta(ring);
            theta.set_term(mask, RatFun(1));
            WeylElement p = project(v.scaled(theta));
            for (const auto& [word, s] : p.terms()) {
                size_t k = index_.at(word);
                for (const auto& [tm, cc] : s.terms()) {
                    if constexpr (std::is_same_v<F, Rational>)
                        mat.at(mask, k * nmasks_ + tm) = to_point_field(cc, mode_);
                    else
                        mat.at(mask, k * nmasks_ + tm) = cc;
                }
            }
        }
        return rref(mat) == flat_dim();
    };
    if (mode_.point)
        return run(Rational(0));
    return run(RatFun(0));
}

WeylElement Coinvariants::act(const std::vector<Scalar>& hvec, const WeylElement& v) const {
    return project(m_.act(hvec, v));
}

std::vector<Rational> Coinvariants::coords_point(const WeylElement& v) const {
    require(mode_.point, "point coordinates requested in generic mode");
    WeylElement p = project(v);
    std::vector<Rational> out(rat_.complement.size(), Rational(0));
    std::map<size_t, size_t> pos;
    for (size_t k = 0; k < rat_.complement.size(); ++k)
        pos[rat_.complement[k]] = k;
    for (const auto& [word, s] : p.terms()) {
        size_t k = index_.at(word);
        for (const auto& [tm, cc] : s.terms())
            out[pos.at(k * nmasks_ + tm)] = to_point_field(cc, mode_);
    }
    return out;
}

std::vector<RatFun> Coinvariants::coords_generic(const WeylElement& v) const {
    require(!mode_.point, "generic coordinates requested in point mode");
    WeylElement p = project(v);
    std::vector<RatFun> out(gen_.complement.size(), RatFun(0));
    std::map<size_t, size_t> pos;
    for (size_t k = 0; k < gen_.complement.size(); ++k)
        pos[gen_.complement[k]] = k;
    for (const auto& [word, s] : p.terms()) {
        size_t k = index_.at(word);
        for (const auto& [tm, cc] : s.terms())
            out[pos.at(k * nmasks_ + tm)] = cc;
    }
    return out;
}

TransitivityReport transitivity_check(const Subspace& i, const Subspace& j, const ModuleModel& m,
                                      int n, const Mode& mode) {
    Coinvariants one(j, m, n, mode);
    Coinvariants q(i, m, n, mode);
    // Complete the generators of I to generators of J; the completion
    // represents J/I and lies in c(I) since J is isotropic.
    std::vector<std::vector<Scalar>> reps;
    {
        std::vector<std::vector<Scalar>> span = i.gens;
        size_t rank = flat_rank(span, i.ambient->hdim(), i.ambient->ring(), mode);
        for (const auto& g : j.gens) {
            auto trial = span;
            trial.push_back(g);
            size_t r = flat_rank(trial, i.ambient->hdim(), i.ambient->ring(), mode);
            if (r > rank) {
                rank = r;
                span = std::move(trial);
                reps.push_back(g);
            }
        }
    }
    auto run = [&](auto field_tag) -> size_t {
        using F = decltype(field_tag);
        const BaseRingPtr& ring = m.ambient->ring();
        size_t q_dim = q.flat_dim();
        std::vector<std::vector<F>> rows;
        std::vector<Word> lower = m.basis(n);
        size_t nmasks = size_t(1) << (ring ? ring->num_odd() : 0);
        std::map<Word, size_t> winindex;
        for (const auto& w : m.basis(n))
            winindex[w] = winindex.size();
        for (const auto& rep : reps)
            for (const auto& w : lower)
                for (uint64_t mask = 0; mask < nmasks; ++mask) {
                    Scalar coeff(ring);
                    coeff.set_term(mask, RatFun(1));
                    WeylElement raw = m.act(rep, q.project(m.model->monomial(w, coeff)));
                    bool fits = true;
                    for (const auto& [word, s] : raw.terms())
                        if (!winindex.count(word)) {
                            fits = false;
                            break;
                        }
                    if (!fits)
                        continue;
                    WeylElement cls = q.project(raw);
                    if constexpr (std::is_same_v<F, Rational>)
                        rows.push_back(q.coords_point(cls));
                    else
                        rows.push_back(q.coords_generic(cls));
                }
        Mat<F> mat(rows.size(), q_dim);
        for (size_t r = 0; r < rows.size(); ++r)
            for (size_t c = 0; c < q_dim; ++c)
                mat.at(r, c) = rows[r][c];
        return q_dim - rref(mat);
    };
    TransitivityReport rep;
    rep.one_stage = one.flat_dim();
    rep.two_stage = mode.point ? run(Rational(0)) : run(RatFun(0));
    rep.agree = rep.one_stage == rep.two_stage;
    return rep;
}

ReductionReport reduction_chain_map(const Subspace& i, const Subspace& j, const ModuleModel& m,
                                    int kmax, int n, const Mode& mode) {
    const BaseRingPtr& ring = m.ambient->ring();
    Subspace cent = centralizer(i, mode);
    Subspace total = subspace_sum(cent, j);
    size_t full = m.ambient->hdim() * (size_t(1) << (ring ? ring->num_odd() : 0));
    require(flat_rank(total.gens, m.ambient->hdim(), ring, mode) == full,
            "reduction hypothesis c(I) + J = H fails");

    // Jbar = J cap c(I), extended to a generating set of J so the inclusion
    // of chain groups is index-preserving.
    Subspace jbar = subspace_intersection(j, cent, mode);
    std::vector<std::vector<Scalar>> jgens = jbar.gens;
    std::vector<Parity> jpars = jbar.parities;
    {
        std::vector<std::vector<Scalar>> span = jbar.gens;
        size_t rank = flat_rank(span, m.ambient->hdim(), ring, mode);
        for (size_t g = 0; g < j.count(); ++g) {
            auto trial = span;
            trial.push_back(j.gens[g]);
            size_t r = flat_rank(trial, m.ambient->hdim(), ring, mode);
            if (r > rank) {
                rank = r;
                span = std::move(trial);
                jgens.push_back(j.gens[g]);
                jpars.push_back(j.parities[g]);
            }
        }
    }
    Subspace jref = Subspace::make(j.ambient, jgens, j.name + "-ref");
    require(same_span(jref, j, mode), "could not complete Jbar to J");
    size_t nbar = jbar.count();

    // Invariants with two levels of headroom so images of truncated chains
    // can still be expressed in the basis.
    InvariantsResult inv = invariants(m, i, n + 2, mode);
    std::vector<int> inv_level;
    for (const auto& v : inv.basis) {
        int lvl = 0;
        for (const auto& [w, c] : v.terms())
            lvl = std::max<int>(lvl, static_cast<int>(w.size()));
        inv_level.push_back(lvl);
    }

    ReductionReport report;
    auto run = [&](auto field_tag) {
        using F = decltype(field_tag);
        std::map<Word, size_t> index;
        std::vector<Word> words = m.basis(n + 2);
        for (size_t k = 0; k < words.size(); ++k)
            index[words[k]] = k;
        FlatIndex mix(words.size(), ring);

        Mat<F> invmat(inv.basis.size(), mix.size());
        for (size_t r = 0; r < inv.basis.size(); ++r)
            for (const auto& [w, s] : inv.basis[r].terms())
                for (const auto& [tm, cc] : s.terms()) {
                    if constexpr (std::is_same_v<F, Rational>)
                        invmat.at(r, mix.index(index.at(w), tm)) = to_point_field(cc, mode);
                    else
                        invmat.at(r, mix.index(index.at(w), tm)) = cc;
                }
        Mat<F> invT(invmat.cols, invmat.rows);
        for (size_t r = 0; r < invmat.rows; ++r)
            for (size_t c = 0; c < invmat.cols; ++c)
                invT.at(c, r) = invmat.at(r, c);
        auto express_inv = [&](const WeylElement& v) -> std::vector<F> {
            std::vector<F> rhs(mix.size(), F(0));
            for (const auto& [w, s] : v.terms())
                for (const auto& [tm, cc] : s.terms()) {
                    if constexpr (std::is_same_v<F, Rational>)
                        rhs[mix.index(index.at(w), tm)] = to_point_field(cc, mode);
                    else
                        rhs[mix.index(index.at(w), tm)] = cc;
                }
            auto sol = solve_linear(invT, rhs);
            require(sol.has_value(), "image of an invariant left the invariants span");
            return *sol;
        };

        Subspace jbar_only = Subspace::make(j.ambient,
                                            std::vector<std::vector<Scalar>>(
                                                jgens.begin(), jgens.begin() + nbar),
                                            "jbar");
        auto src_wedges = [&](int k) { return wedge_basis(jbar_only, k); };
        // Domain restricted to invariants of level <= cap, codomain over the
        // full basis (mirrors the cutoff convention of the target complex).
        std::vector<size_t> all_inv;
        for (size_t x = 0; x < inv.basis.size(); ++x)
            all_inv.push_back(x);
        auto inv_upto = [&](int cap) {
            std::vector<size_t> sel;
            for (size_t x = 0; x < inv.basis.size(); ++x)
                if (inv_level[x] <= cap)
                    sel.push_back(x);
            return sel;
        };
        auto src_d = [&](int k, int cap) -> Mat<F> {
            auto wk = src_wedges(k);
            auto wk1 = src_wedges(k - 1);
            auto dom_inv = inv_upto(cap);
            std::map<WedgeMono, size_t> wix;
            for (size_t x = 0; x < wk1.size(); ++x)
                wix[wk1[x]] = x;
            Mat<F> mat(wk1.size() * inv.basis.size(), wk.size() * dom_inv.size());
            for (size_t wi = 0; wi < wk.size(); ++wi) {
                auto letters = expand_letters(wk[wi]);
                for (size_t b = 0; b < dom_inv.size(); ++b)
                    for (size_t pos = 0; pos < letters.size(); ++pos) {
                        size_t g = letters[pos];
                        int tail_odd = 0;
                        for (size_t qq = pos + 1; qq < letters.size(); ++qq)
                            if (jpars[letters[qq]] == Parity::Odd)
                                ++tail_odd;
                        int sign = ((pos + 1) % 2 == 0 ? 1 : -1);
                        if (jpars[g] == Parity::Odd && tail_odd % 2 == 1)
                            sign = -sign;
                        WeylElement img = m.act(jgens[g], inv.basis[dom_inv[b]]);
                        if (img.is_zero())
                            continue;
                        std::vector<F> coords = express_inv(img);
                        WedgeMono smaller = wk[wi];
                        smaller[g] -= 1;
                        size_t row0 = wix.at(smaller) * inv.basis.size();
                        for (size_t c = 0; c < coords.size(); ++c) {
                            if (coords[c] == F(0))
                                continue;
                            F val = sign < 0 ? F(-coords[c]) : coords[c];
                            mat.at(row0 + c, wi * dom_inv.size() + b) =
                                mat.at(row0 + c, wi * dom_inv.size() + b) + val;
                        }
                    }
            }
            return mat;
        };

        Koszul target(jref, m, mode);
        for (int k = 0; k <= kmax; ++k) {
            Mat<F> dk = src_d(k, n);
            Mat<F> dk1 = src_d(k + 1, n - 1);
            size_t z = src_wedges(k).size() * inv_upto(n).size() - rref(dk);
            size_t b = rref(dk1);
            size_t source_rank = z - b;

            Koszul::HEntry tgt = target.homology(k, n);

            ChainBasis tdom = chain_basis(jref, m, k, n);
            ChainBasis bdom = chain_basis(jref, m, k + 1, n - 1);
            std::vector<std::vector<F>> boundary_rows;
            for (size_t wi = 0; wi < bdom.wedges.size(); ++wi)
                for (size_t mi = 0; mi < bdom.words.size(); ++mi)
                    for (uint64_t mask = 0; mask < bdom.nmasks; ++mask) {
                        Scalar coeff(ring);
                        coeff.set_term(mask, RatFun(1));
                        Koszul::Chain c;
                        c[bdom.wedges[wi]] = m.model->monomial(bdom.words[mi], coeff);
                        Koszul::Chain img = target.differential(c);
                        std::vector<F> rowv(tdom.size(), F(0));
                        bool nz = false;
                        for (const auto& [wedge, v] : img) {
                            size_t wix2 = tdom.wedge_index.at(wedge);
                            for (const auto& [word, s] : v.terms())
                                for (const auto& [tm, cc] : s.terms()) {
                                    F val;
                                    if constexpr (std::is_same_v<F, Rational>)
                                        val = to_point_field(cc, mode);
                                    else
                                        val = cc;
                                    rowv[tdom.index(wix2, tdom.word_index.at(word), tm)] = val;
                                    nz = true;
                                }
                        }
                        if (nz)
                            boundary_rows.push_back(std::move(rowv));
                    }

            Mat<F> ker = kernel_of(dk);
            auto wk = src_wedges(k);
            auto dom_inv = inv_upto(n);
            std::vector<std::vector<F>> mapped;
            for (size_t r = 0; r < ker.rows; ++r) {
                std::vector<F> rowv(tdom.size(), F(0));
                for (size_t wi = 0; wi < wk.size(); ++wi)
                    for (size_t b2i = 0; b2i < dom_inv.size(); ++b2i) {
                        size_t b2 = dom_inv[b2i];
                        const F& coeff = ker.at(r, wi * dom_inv.size() + b2i);
                        if (coeff == F(0))
                            continue;
                        WedgeMono wfull(jref.count(), 0);
                        for (size_t g = 0; g < nbar; ++g)
                            wfull[g] = wk[wi][g];
                        size_t wix2 = tdom.wedge_index.at(wfull);
                        for (const auto& [word, s] : inv.basis[b2].terms())
                            for (const auto& [tm, cc] : s.terms()) {
                                F val;
                                if constexpr (std::is_same_v<F, Rational>)
                                    val = to_point_field(cc, mode);
                                else
                                    val = cc;
                                size_t cix = tdom.index(wix2, tdom.word_index.at(word), tm);
                                rowv[cix] = rowv[cix] + coeff * val;
                            }
                    }
                mapped.push_back(std::move(rowv));
            }

            size_t nb = boundary_rows.size();
            Mat<F> bmat(nb, tdom.size());
            for (size_t r = 0; r < nb; ++r)
                for (size_t c = 0; c < tdom.size(); ++c)
                    bmat.at(r, c) = boundary_rows[r][c];
            size_t brank = rref(bmat);
            Mat<F> both(nb + mapped.size(), tdom.size());
            for (size_t r = 0; r < nb; ++r)
                for (size_t c = 0; c < tdom.size(); ++c)
                    both.at(r, c) = boundary_rows[r][c];
            for (size_t r = 0; r < mapped.size(); ++r)
                for (size_t c = 0; c < tdom.size(); ++c)
                    both.at(nb + r, c) = mapped[r][c];
            size_t induced = rref(both) - brank;

            ReductionReport::Entry e;
            e.degree = k;
            e.source_rank = source_rank;
            e.target_rank = tgt.rank;
            e.induced_rank = induced;
            e.stabilized = tgt.stabilized;
            e.bijective = induced == tgt.rank && source_rank == tgt.rank;
            if (!e.bijective && e.stabilized)
                report.all_bijective = false;
            report.entries.push_back(e);
        }
    };
    if (mode.point)
        run(Rational(0));
    else
        run(RatFun(0));
    return report;
}

SpotcheckReport vanishing_spotcheck(
    size_t param_var, const std::vector<Rational>& samples,
    const std::function<std::pair<Subspace, ModuleModel>(const Mode&)>& instance, int kmax, int n,
    int ceiling) {
    SpotcheckReport report;
    for (const Rational& t : samples) {
        Mode mode = Mode::at_point({{param_var, t}});
        auto [i, m] = instance(mode);
        Koszul kz(i, m, mode);
        SpotcheckReport::Sample s;
        s.t = t;
        s.all_zero = true;
        for (int k = 1; k <= kmax; ++k) {
            auto e = kz.stabilized_homology(k, n, ceiling);
            if (e.rank != 0 || !e.stabilized)
                s.all_zero = false;
            s.entries.push_back(e);
        }
        if (!s.all_zero)
            report.pass = false;
        report.samples.push_back(std::move(s));
    }
    return report;
}

} // namespace hcx
