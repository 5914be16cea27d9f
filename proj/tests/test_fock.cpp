#include "doctest.h"

#include "fixtures.hpp"
#include "hcx/fock.hpp"

using namespace hcx;
using namespace hcx::fixtures;

namespace {

// The 2-dimensional chart of the universal Lagrangian family over the base
// (x, l): L is spanned by e + x es + l, model O[es].
ChartPtr family_chart(const BaseRingPtr& ring, const HeisenbergPtr& h, Side side) {
    std::vector<std::vector<Scalar>> i0{{parse_scalar("1", ring), Scalar(ring)}};
    std::vector<std::vector<Scalar>> duals{{Scalar(ring), parse_scalar("1", ring)}};
    std::vector<std::vector<Scalar>> phi{{parse_scalar("x", ring)}};
    std::vector<std::vector<Scalar>> psi;
    std::vector<Scalar> lambda{parse_scalar("l", ring)};
    return Chart::make_explicit(h, side, i0, duals, {}, phi, psi, lambda);
}

} // namespace

TEST_CASE("left Fock module of a Lagrangian line: polynomials in the dual") {
    auto ring = make_ring({}, {});
    Mode pt = Mode::at_point({});
    // basis (e, es) with (es, e) = 1 as in the worked 2-dim example
    auto h = make_heisenberg(ring, {{"e", Parity::Even}, {"es", Parity::Even}},
                             {{"es", "e", "1"}});
    Subspace l = span_names(h, "L", {"e"});
    FockModule m = FockModule::for_subspace(l, Side::Left, pt, 3);

    // act(anything in I, vacuum) = 0
    CHECK(m.act(h->element(hvec(h, {{"e", "5"}})), m.vacuum()).is_zero());

    // act(e, es^2) = -2 es with the convention (es, e) = 1.
    const auto& cw = m.chart()->weyl();
    size_t es_idx = m.chart()->dual_index(0);
    Word es2{static_cast<uint16_t>(es_idx), static_cast<uint16_t>(es_idx)};
    WeylElement v = cw->monomial(es2, Scalar::constant(ring, 1));
    WeylElement image = m.act(h->element(hvec(h, {{"e", "1"}})), v);
    WeylElement expect =
        cw->monomial(Word{static_cast<uint16_t>(es_idx)}, Scalar::constant(ring, -2));
    CHECK(image == expect);

    // Cross-check against the Weyl reduction of e*(es^2) mod U*L: note the
    // left model reduces trailing e letters.
    WeylElement raw = m.chart()->to_chart(h->weyl()->generator(0)) * v;
    CHECK(m.chart()->reduce(raw) == expect);
}

TEST_CASE("right model of the universal Lagrangian family") {
    auto ring = make_ring({"x", "l"}, {});
    auto h = make_heisenberg(ring, {{"e", Parity::Even}, {"es", Parity::Even}},
                             {{"es", "e", "1"}});
    ChartPtr chart = family_chart(ring, h, Side::Right);
    FockModule m(chart, 2);

    // f.e = d_{es} f - x es f - l f on f = 1 and f = es.
    const auto& cw = chart->weyl();
    size_t es_idx = chart->dual_index(0);
    WeylElement one = cw->one();
    WeylElement es = cw->generator(es_idx);
    WeylElement e_amb = h->weyl()->generator(0);

    WeylElement r1 = m.act(e_amb, one);
    WeylElement expect1 = es.scaled(parse_scalar("-x", ring)) +
                          cw->constant(parse_scalar("-l", ring));
    CHECK(r1 == expect1);

    WeylElement r2 = m.act(e_amb, es);
    WeylElement expect2 = cw->one() + (es * es).scaled(parse_scalar("-x", ring)) +
                          es.scaled(parse_scalar("-l", ring));
    CHECK(r2 == expect2);
}

TEST_CASE("left and right actions commute on the bimodule chart") {
    auto ring = make_ring({"x"}, {"t1"});
    Mode pt = Mode::at_point({{0, Rational(3)}});
    auto h = standard_mixed(ring, 1, 1);
    // I = span(e1): M^r(I) carries a left action of c(I) and the right action
    // of everything; c (m b) = (c m) b holds in U(H) on the nose.
    Subspace i = span_names(h, "I", {"e1"});
    FockModule m = FockModule::for_subspace(i, Side::Right, pt, 2);
    Subspace cent = centralizer(i, pt);
    auto monomials = m.basis(2);
    for (const auto& cvec : cent.gens) {
        for (size_t j = 0; j < h->vdim(); ++j) {
            auto b = h->basis_vector(j);
            for (const auto& w : monomials) {
                WeylElement mono = m.chart()->weyl()->monomial(w, Scalar::constant(ring, 1));
                WeylElement lr = m.act(h->element(b), m.act_opposite(h->element(cvec), mono));
                WeylElement rl = m.act_opposite(h->element(cvec), m.act(h->element(b), mono));
                CHECK(lr == rl);
            }
        }
    }
}

TEST_CASE("invariants: Fock cyclicity and reduced dimensions") {
    auto ring = make_ring({}, {});
    Mode pt = Mode::at_point({});

    // M(L)^L = span(vacuum) for a Lagrangian in (2|0).
    auto h = standard_even(ring, 1);
    Subspace l = span_names(h, "L", {"e1"});
    FockModule ml = FockModule::for_subspace(l, Side::Left, pt);
    auto inv = invariants(ModuleModel::from_fock(ml), l, 4, pt);
    for (size_t d = 0; d < inv.dims.size(); ++d)
        CHECK(inv.dims[d] == 1);

    // Clifford (0|2): M(span xi) has invariants of span(xis) of dimension 1.
    auto hc = standard_odd(ring, 1);
    Subspace lx = span_names(hc, "Lx", {"xi1"});
    Subspace lxs = span_names(hc, "Lxs", {"xi1s"});
    FockModule mc = FockModule::for_subspace(lx, Side::Left, pt);
    auto invc = invariants(ModuleModel::from_fock(mc), lxs, 1, pt);
    CHECK(invc.dims.back() == 1);
    REQUIRE(invc.basis.size() == 1);
    // The invariant line is the top monomial.
    CHECK(invc.basis[0].terms().begin()->first.size() == 1);

    // (4|0), J = span(e1,e2), I = span(e1): M(J)^I has dims 1,2,3,... i.e.
    // polynomials in one dual variable, degreewise.
    auto h4 = standard_even(ring, 2);
    Subspace j = span_names(h4, "J", {"e1", "e2"});
    Subspace i = span_names(h4, "I", {"e1"});
    FockModule mj = FockModule::for_subspace(j, Side::Left, pt);
    auto invj = invariants(ModuleModel::from_fock(mj), i, 5, pt);
    for (size_t d = 0; d < invj.dims.size(); ++d)
        CHECK(invj.dims[d] == d + 1);

    // Matches the Fock module of J/I over the reduced algebra degreewise.
    auto red = reduced_heisenberg(i, pt);
    Subspace jbar = red.project_subspace(j);
    FockModule mbar = FockModule::for_subspace(jbar, Side::Left, pt);
    for (int d = 0; d <= 5; ++d)
        CHECK(mbar.basis(d).size() == invj.dims[static_cast<size_t>(d)]);
}

TEST_CASE("Clifford factorization") {
    auto ring = make_ring({}, {});
    Mode pt = Mode::at_point({});

    // M = M(L) itself in (0|2): dim 2 = 2 * 1.
    auto h = standard_odd(ring, 1);
    Subspace l = span_names(h, "L", {"xi1"});
    FockModule ml = FockModule::for_subspace(l, Side::Left, pt);
    auto f0 = clifford_factorize(ModuleModel::from_fock(ml), l, pt);
    CHECK(f0.bijective);
    CHECK(f0.dim_m == 2);
    CHECK(f0.dim_ml * f0.dim_inv == f0.dim_m);

    // M = W(V) as a left module over itself in (0|2): dim 4 = 2 * 2.
    auto reg = ModuleModel::regular(h);
    auto f1 = clifford_factorize(reg, l, pt);
    CHECK(f1.bijective);
    CHECK(f1.dim_m == 4);
    CHECK(f1.dim_ml == 2);
    CHECK(f1.dim_inv == 2);

    // M = M(L') for another Lagrangian in (0|4): dim 4 = 4 * 1.
    auto h2 = standard_odd(ring, 2);
    Subspace lag = span_names(h2, "L", {"xi1", "xi2"});
    Subspace lp = span(h2, "Lp", {{{"xi1", "1"}, {"xi2s", "1"}},
                                  {{"xi2", "1"}, {"xi1s", "-1"}}});
    REQUIRE(is_lagrangian(lp, pt));
    FockModule mlp = FockModule::for_subspace(lp, Side::Left, pt);
    auto f2 = clifford_factorize(ModuleModel::from_fock(mlp), lag, pt);
    CHECK(f2.bijective);
    CHECK(f2.dim_m == 4);
    CHECK(f2.dim_ml == 4);
    CHECK(f2.dim_inv == 1);
}
