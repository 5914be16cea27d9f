#include "doctest.h"

#include "fixtures.hpp"
#include "hcx/koszul.hpp"

using namespace hcx;
using namespace hcx::fixtures;

TEST_CASE("Koszul soundness and trivial complexes") {
    auto ring = make_ring({}, {});
    Mode pt = Mode::at_point({});
    auto h = standard_even(ring, 1);
    Subspace l = span_names(h, "L", {"e1"});
    Subspace lp = span_names(h, "Lp", {"e1s"});
    auto m = ModuleModel::from_fock(FockModule::for_subspace(lp, Side::Left, pt));

    // I = 0: complex concentrated in degree 0, H0 = M (the interior band of
    // the window, two degrees below the cutoff, survives untouched).
    Koszul k0(Subspace::zero(h), m, pt);
    auto e = k0.homology(0, 4);
    CHECK(e.rank == m.basis(2).size());
    CHECK(k0.homology(1, 4).rank == 0);

    // Chain group counts for L acting on M(Lp): degrees -1 and 0 both have
    // one wedge monomial per internal monomial.
    Koszul k(l, m, pt);
    CHECK(wedge_basis(l, 0).size() == 1);
    CHECK(wedge_basis(l, 1).size() == 1);
    CHECK(wedge_basis(l, 2).size() == 0); // even generator squares to zero

    // d^2 = 0 exactly.
    for (int deg = 1; deg <= 2; ++deg)
        CHECK(k.d_squared_zero(deg, 5));

    // Clifford (0|2), I = span(xi): exterior powers are symmetric powers.
    auto hc = standard_odd(ring, 1);
    Subspace ix = span_names(hc, "I", {"xi1"});
    for (int deg = 0; deg <= 4; ++deg)
        CHECK(wedge_basis(ix, deg).size() == 1);
}

TEST_CASE("transversal Lagrangians: rank-1 H0 and vanishing higher homology") {
    auto ring = make_ring({}, {});
    Mode pt = Mode::at_point({});
    auto h = standard_even(ring, 1);
    Subspace l = span_names(h, "L", {"e1"});
    Subspace lp = span_names(h, "Lp", {"e1s"});
    auto m = ModuleModel::from_fock(FockModule::for_subspace(lp, Side::Left, pt));
    Koszul k(l, m, pt);

    auto h0 = k.homology(0, 6);
    CHECK(h0.rank == 1);
    CHECK(h0.stabilized);
    auto h1 = k.homology(1, 6);
    CHECK(h1.rank == 0);
    CHECK(h1.stabilized);

    // The vacuum class is a unit: exhibit it and its inverse.
    Coinvariants coin(l, m, 6, pt);
    WeylElement vac = coin.vacuum_class();
    CHECK(!vac.is_zero());
    CHECK(coin.certify_generator(vac));
    auto c = coin.express(m.vac, vac);
    REQUIRE(c.has_value());
    CHECK(c->is_one());
}

TEST_CASE("Berezinian placement: homology concentrated in degree -n") {
    auto ring = make_ring({}, {});
    Mode pt = Mode::at_point({});

    // (4|0): L = <e1,e2>, Lp = <e1, e2s>: intersection rank (1|0), homology
    // rank 1 in degree -1.
    auto h4 = standard_even(ring, 2);
    Subspace L = span_names(h4, "L", {"e1", "e2"});
    Subspace Lp = span_names(h4, "Lp", {"e1", "e2s"});
    auto m = ModuleModel::from_fock(FockModule::for_subspace(Lp, Side::Left, pt));
    Koszul k(L, m, pt);
    auto h0 = k.homology(0, 6);
    auto h1 = k.homology(1, 6);
    auto h2 = k.homology(2, 6);
    CHECK(h0.rank == 0);
    CHECK(h1.rank == 1);
    CHECK(h2.rank == 0);
    CHECK(h1.stabilized);

    // (0|2), L = Lp = <xi>: rank 1 in degree 0, but the vacuum class of
    // M(L) dies in H0.
    auto hc = standard_odd(ring, 1);
    Subspace lx = span_names(hc, "Lx", {"xi1"});
    auto mc = ModuleModel::from_fock(FockModule::for_subspace(lx, Side::Left, pt));
    Koszul kc(lx, mc, pt);
    auto hc0 = kc.stabilized_homology(0, 3, 6);
    CHECK(hc0.rank == 1);
    Coinvariants cc(lx, mc, 3, pt);
    CHECK(cc.vacuum_class().is_zero());
}

TEST_CASE("isotropic reduction chain map is a quasi-isomorphism") {
    auto ring = make_ring({}, {});
    Mode pt = Mode::at_point({});

    // (4|0): I = <e1> inside J' = <e1,e2>, J = <e1s, e2s>.
    auto h4 = standard_even(ring, 2);
    Subspace i = span_names(h4, "I", {"e1"});
    Subspace jp = span_names(h4, "Jp", {"e1", "e2"});
    Subspace j = span_names(h4, "J", {"e1s", "e2s"});
    auto m = ModuleModel::from_fock(FockModule::for_subspace(jp, Side::Left, pt));
    auto rep = reduction_chain_map(i, j, m, 1, 5, pt);
    CHECK(rep.all_bijective);
    REQUIRE(!rep.entries.empty());
    CHECK(rep.entries[0].source_rank == rep.entries[0].target_rank);

    // I = 0 is the identity chain map.
    auto rep0 = reduction_chain_map(Subspace::zero(h4), j, m, 1, 4, pt);
    CHECK(rep0.all_bijective);
}

TEST_CASE("transitivity of coinvariants: two stages equal one stage") {
    auto ring = make_ring({}, {});
    Mode pt = Mode::at_point({});

    // (4|0): I = <e1> inside J = <e1,e2>, M = M(<e1s,e2s>).
    auto h4 = standard_even(ring, 2);
    Subspace i = span_names(h4, "I", {"e1"});
    Subspace j = span_names(h4, "J", {"e1", "e2"});
    Subspace lp = span_names(h4, "Lp", {"e1s", "e2s"});
    auto m = ModuleModel::from_fock(FockModule::for_subspace(lp, Side::Left, pt));
    auto rep = transitivity_check(i, j, m, 6, pt);
    CHECK(rep.agree);
    CHECK(rep.one_stage == 1);

    // (4|2): nested pair with an odd direction.
    auto h42 = standard_mixed(ring, 2, 1);
    Subspace i2 = span_names(h42, "I", {"xi1"});
    Subspace j2 = span_names(h42, "J", {"xi1", "e1"});
    Subspace lp2 = span(h42, "Lp2", {{{"e1s", "1"}}, {{"e2s", "1"}}, {{"xi1s", "1"}}});
    REQUIRE(is_lagrangian(lp2, pt));
    auto m2 = ModuleModel::from_fock(FockModule::for_subspace(lp2, Side::Left, pt));
    auto rep2 = transitivity_check(i2, j2, m2, 5, pt);
    CHECK(rep2.agree);
}

TEST_CASE("central character push-out agrees with direct coinvariants") {
    // Two copies of (2|0) with radical directions k1, k2, characters chi and
    // -chi; the isotropic line e1s - e2s + k1 reduces either through the
    // push-out or by substituting the character values directly.
    auto ring = make_ring({"a"}, {});
    Mode pt = Mode::at_point({{0, Rational(5)}});
    std::vector<BasisVector> basis{{"e1", Parity::Even},  {"e1s", Parity::Even},
                                   {"e2", Parity::Even},  {"e2s", Parity::Even},
                                   {"k1", Parity::Even},  {"k2", Parity::Even}};
    std::vector<std::vector<Scalar>> gram(6, std::vector<Scalar>(6, Scalar(ring)));
    auto one = Scalar::constant(ring, 1);
    gram[0][1] = one;
    gram[1][0] = -one;
    gram[2][3] = one;
    gram[3][2] = -one;
    CentralExtension ext{WeylAlgebra::create(ring, basis, gram), {}};
    for (int kk = 0; kk < 2; ++kk) {
        std::vector<Scalar> k(6, Scalar(ring));
        k[4 + kk] = one;
        ext.k_gens.push_back(k);
    }
    Scalar chi = Scalar::even_variable(ring, 0);
    Pushout p = pushout_central_character(ext, {chi, -chi}, pt);
    REQUIRE(p.h_chi->vdim() == 4);

    // Itilde = < e1s - e2s + k1 >, transversal to K.
    std::vector<Scalar> g(6, Scalar(ring));
    g[1] = one;
    g[3] = -one;
    g[4] = one;
    Subspace i_chi = pushout_subspace(p, ext, {g}, pt);

    // L+ = <e1, e2> in H_chi coordinates.
    Subspace lplus = span_names(p.h_chi, "L+", {"e1", "e2"});
    auto m = ModuleModel::from_fock(FockModule::for_subspace(lplus, Side::Left, pt));
    Coinvariants via_pushout(i_chi, m, 5, pt);

    // Direct route: the same subspace with the character value substituted
    // into the central coordinate by hand.
    std::vector<Scalar> direct = p.h_chi->zero_vector();
    direct[0] = chi; // chi(k1) = a
    for (size_t c = 0; c < 4; ++c)
        direct[c + 1] = g[c];
    Subspace i_direct = Subspace::make(p.h_chi, {direct}, "direct");
    Coinvariants via_direct(i_direct, m, 5, pt);

    CHECK(via_pushout.flat_dim() == via_direct.flat_dim());
    CHECK(via_pushout.vacuum_class() == via_direct.vacuum_class());

    // Sanity: with chi1 + chi2 != 0 the diagonal radical maps to a nonzero
    // central constant; quotienting by its line kills the coinvariants.
    Pushout pbad = pushout_central_character(ext, {chi, chi}, pt);
    std::vector<Scalar> diag(6, Scalar(ring));
    diag[4] = one;
    diag[5] = one;
    std::vector<Scalar> dvec = pbad.map_vector(diag);
    Subspace bad = Subspace::make(pbad.h_chi, {dvec}, "bad");
    Subspace lplus2 = span_names(pbad.h_chi, "L+", {"e1", "e2"});
    auto m2 = ModuleModel::from_fock(FockModule::for_subspace(lplus2, Side::Left, pt));
    Coinvariants dead(bad, m2, 4, pt);
    CHECK(dead.flat_dim() == 0);
}

TEST_CASE("vacuum vanishing locus on a purely odd family") {
    // (0|2) family: L1(t) = <xi1s + th1 p(t)> with the odd shift p(t) th1,
    // module M(<xi1s>). The vacuum class vanishes exactly where the family
    // line meets the module line, i.e. at the roots of p(t) = t(t-1).
    auto ring = make_ring({"t"}, {"th1"});
    auto h = standard_odd(ring, 1);
    for (int tval : {0, 1, 2}) {
        Mode pt = Mode::at_point({{0, Rational(tval)}});
        Subspace l1 = span(h, "L1", {{{"xi1s", "1"}, {"one", "th1*(t*t - t)"}}});
        auto m = ModuleModel::from_fock(FockModule::for_subspace(
            span_names(h, "Lmod", {"xi1s"}), Side::Left, pt));
        Coinvariants coin(l1, m, 2, pt);
        WeylElement vac = coin.vacuum_class();
        bool vanish = tval == 0 || tval == 1;
        CHECK(vac.is_zero() == vanish);
    }
}

TEST_CASE("pointwise concentration along a central-shift family") {
    // L(t) = <e + t es + 1>; L2 = <e>. The pi-images intersect at t = 0 but
    // the lifted spaces stay disjoint, and the pointwise homology is
    // concentrated in degree 0 at every sample including the crossing.
    auto ring = make_ring({"t"}, {});
    auto h = make_heisenberg(ring, {{"e", Parity::Even}, {"es", Parity::Even}},
                             {{"es", "e", "1"}});
    auto instance = [&](const Mode& mode) {
        Subspace l1 = span(h, "L1", {{{"e", "1"}, {"es", "t"}, {"one", "1"}}});
        Subspace l2 = span_names(h, "L2", {"e"});
        auto m = ModuleModel::from_fock(FockModule::for_subspace(l2, Side::Left, mode));
        return std::make_pair(l1, m);
    };
    std::vector<Rational> samples{Rational(-1), Rational(0), Rational(1), Rational(2),
                                  Rational(3)};
    auto rep = vanishing_spotcheck(0, samples, instance, 2, 6, 10);
    CHECK(rep.pass);
    for (const auto& s : rep.samples) {
        CHECK(s.all_zero);
        for (const auto& e : s.entries) {
            CHECK(e.rank == 0);
            CHECK(e.stabilized);
        }
    }
}

TEST_CASE("invariants and homology dimension bookkeeping for nilpotent I") {
    auto ring = make_ring({}, {});
    Mode pt = Mode::at_point({});
    auto h = standard_odd(ring, 2); // (0|4)
    Subspace i = span_names(h, "I", {"xi1"});
    Subspace l = span_names(h, "L", {"xi1", "xi2"});
    auto m = ModuleModel::from_fock(FockModule::for_subspace(l, Side::Left, pt));
    // I has rank (0|1), so the Berezinian shift is by n = 0 and the total
    // homology dimension across degrees matches the invariants dimension.
    auto inv = invariants(m, i, 4, pt);
    Koszul k(i, m, pt);
    size_t total_h = 0;
    for (int deg = 0; deg <= 4; ++deg)
        total_h += k.stabilized_homology(deg, 4, 6).rank;
    CHECK(total_h == inv.dims.back());
}
