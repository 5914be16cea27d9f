#include "doctest.h"

#include "fixtures.hpp"
#include "hcx/pfaffian.hpp"
#include "hcx/supermatrix.hpp"

#include <numeric>
#include <random>

using namespace hcx;
using namespace hcx::fixtures;

namespace {

// Independent oracle: Pfaffian as the signed sum over perfect matchings.
Scalar matching_pfaffian(const std::vector<std::vector<Scalar>>& a, const BaseRingPtr& ring) {
    size_t n = a.size();
    if (n % 2 == 1)
        return Scalar(ring);
    Scalar total(ring);
    std::function<void(std::vector<size_t>&, std::vector<size_t>&)> rec =
        [&](std::vector<size_t>& remaining, std::vector<size_t>& order) {
            if (remaining.empty()) {
                int inversions = 0;
                for (size_t x = 0; x < order.size(); ++x)
                    for (size_t y = x + 1; y < order.size(); ++y)
                        if (order[x] > order[y])
                            ++inversions;
                Scalar term = Scalar::constant(ring, inversions % 2 ? -1 : 1);
                for (size_t k = 0; k + 1 < order.size(); k += 2)
                    term = term * a[order[k]][order[k + 1]];
                total = total + term;
                return;
            }
            size_t i = remaining.front();
            for (size_t pos = 1; pos < remaining.size(); ++pos) {
                size_t j = remaining[pos];
                std::vector<size_t> next;
                for (size_t q = 1; q < remaining.size(); ++q)
                    if (q != pos)
                        next.push_back(remaining[q]);
                order.push_back(i);
                order.push_back(j);
                rec(next, order);
                order.pop_back();
                order.pop_back();
            }
        };
    std::vector<size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::vector<size_t> order;
    rec(all, order);
    return total;
}

PfInput random_input(const BaseRingPtr& ring, size_t m, std::mt19937_64& rng,
                     bool symbolic_lambda) {
    std::uniform_int_distribution<int> coef(-4, 4);
    PfInput in;
    in.ring = ring;
    in.phi.assign(m, std::vector<Scalar>(m, Scalar(ring)));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j) {
            Scalar v = Scalar::constant(ring, coef(rng));
            in.phi[i][j] = v;
            in.phi[j][i] = -v;
        }
    for (size_t i = 0; i < m; ++i)
        in.lambda.push_back(symbolic_lambda ? Scalar::odd_variable(ring, i) : Scalar(ring));
    return in;
}

BaseRingPtr pf_ring(size_t m) {
    std::vector<std::string> odd;
    for (size_t i = 1; i <= m; ++i)
        odd.push_back("s" + std::to_string(i));
    return make_ring({}, odd);
}

} // namespace

TEST_CASE("paper instances m = 2 and m = 3, three ways") {
    auto ring = make_ring({"a", "a12", "a13", "a23"}, {"l1", "l2", "l3"});
    Mode pt = Mode::at_point(
        {{0, Rational(7)}, {1, Rational(2)}, {2, Rational(3)}, {3, Rational(5)}});

    PfInput in2;
    in2.ring = ring;
    in2.phi = {{Scalar(ring), parse_scalar("a", ring)},
               {parse_scalar("-a", ring), Scalar(ring)}};
    in2.lambda = {parse_scalar("l1", ring), parse_scalar("l2", ring)};
    Scalar expect2 = parse_scalar("-a + l1*l2", ring);
    CHECK(pf_formula(in2).coefficient == expect2);
    CHECK(pf_recursion(in2).coefficient == expect2);
    CHECK(pf_oracle(in2, pt).coefficient.evaluate_even({{0, Rational(7)}}) ==
          expect2.evaluate_even({{0, Rational(7)}}));
    CHECK(pf_oracle(in2, Mode::generic()).coefficient == expect2);

    // m = 3: all three routes agree on -l1 a23 + l2 a13 - l3 a12 + l1 l2 l3.
    PfInput in3;
    in3.ring = ring;
    in3.phi.assign(3, std::vector<Scalar>(3, Scalar(ring)));
    auto set = [&](size_t i, size_t j, const std::string& e) {
        in3.phi[i][j] = parse_scalar(e, ring);
        in3.phi[j][i] = -in3.phi[i][j];
    };
    set(0, 1, "a12");
    set(0, 2, "a13");
    set(1, 2, "a23");
    in3.lambda = {parse_scalar("l1", ring), parse_scalar("l2", ring), parse_scalar("l3", ring)};
    Scalar expect3 = parse_scalar("-l1*a23 + l2*a13 - l3*a12 + l1*l2*l3", ring);
    CHECK(pf_formula(in3).coefficient == expect3);
    CHECK(pf_recursion(in3).coefficient == expect3);
    CHECK(pf_oracle(in3, Mode::generic()).coefficient == expect3);
}

TEST_CASE("three-way agreement on random instances up to m = 5") {
    std::mt19937_64 rng(2024);
    for (size_t m = 1; m <= 5; ++m) {
        auto ring = pf_ring(m);
        for (int trial = 0; trial < 3; ++trial) {
            PfInput in = random_input(ring, m, rng, true);
            PfValue f = pf_formula(in);
            PfValue r = pf_recursion(in);
            PfValue o = pf_oracle(in, Mode::at_point({}));
            CHECK(f == r);
            CHECK(f == o);
        }
    }
}

TEST_CASE("classical limit, odd product, and Rees membership") {
    std::mt19937_64 rng(99);

    auto ring4 = pf_ring(4);
    for (int trial = 0; trial < 5; ++trial) {
        PfInput in = random_input(ring4, 4, rng, false);
        Scalar expect = matching_pfaffian(in.phi, ring4);
        CHECK(pf_formula(in).coefficient == expect);
        CHECK(classical_pfaffian(in.phi, ring4) == expect);
    }

    for (size_t m = 1; m <= 4; ++m) {
        auto ring = pf_ring(m);
        PfInput in;
        in.ring = ring;
        in.phi.assign(m, std::vector<Scalar>(m, Scalar(ring)));
        Scalar prod = Scalar::constant(ring, 1);
        for (size_t i = 0; i < m; ++i) {
            in.lambda.push_back(Scalar::odd_variable(ring, i));
            prod = prod * Scalar::odd_variable(ring, i);
        }
        CHECK(pf_formula(in).coefficient == prod);
    }

    // Filtered coefficients: lambda in N A_{<=1} with A the polynomials in
    // t; Pf lies in the Rees span at level m and reduces to Pf(phi) mod the
    // odd ideal.
    auto ring = make_ring({"t"}, {"s1", "s2", "s3"});
    PfInput in;
    in.ring = ring;
    in.phi.assign(3, std::vector<Scalar>(3, Scalar(ring)));
    auto set = [&](size_t i, size_t j, const std::string& e) {
        in.phi[i][j] = parse_scalar(e, ring);
        in.phi[j][i] = -in.phi[i][j];
    };
    set(0, 1, "2");
    set(0, 2, "3");
    set(1, 2, "5");
    in.lambda = {parse_scalar("s1*(1 + t)", ring), parse_scalar("s2*t", ring),
                 parse_scalar("s3*(2 - t)", ring)};
    PfValue v = pf_formula(in);
    CHECK(rees_member_scalar(v.coefficient, {0}, 3));
    CHECK(v.coefficient.reduce_mod_odd() == classical_pfaffian(in.phi, ring).reduce_mod_odd());
    CHECK_FALSE(rees_member_scalar(parse_scalar("t", ring), {0}, 3));
    // The Pfaffian section is even, so against the m odd dual letters the
    // coefficient is homogeneous of parity m mod 2.
    CHECK(v.coefficient.parity() == Parity::Odd);
}

TEST_CASE("orthogonal decomposition multiplicativity") {
    std::mt19937_64 rng(7);
    auto ring = pf_ring(4);
    PfInput top = random_input(ring, 4, rng, true);
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 2; j < 4; ++j) {
            top.phi[i][j] = Scalar(ring);
            top.phi[j][i] = Scalar(ring);
        }
    PfInput w1, w2;
    w1.ring = w2.ring = ring;
    w1.phi = {{top.phi[0][0], top.phi[0][1]}, {top.phi[1][0], top.phi[1][1]}};
    w1.lambda = {top.lambda[0], top.lambda[1]};
    w2.phi = {{top.phi[2][2], top.phi[2][3]}, {top.phi[3][2], top.phi[3][3]}};
    w2.lambda = {top.lambda[2], top.lambda[3]};
    Scalar whole = pf_formula(top).coefficient;
    Scalar split = pf_formula(w1).coefficient * pf_formula(w2).coefficient;
    CHECK(whole == split);
}

TEST_CASE("theta section examples") {
    auto ring = make_ring({"t"}, {});
    auto h = standard_odd(ring, 2); // (0|4)

    Subspace l1 = span_names(h, "L1", {"xi1", "xi2"});
    Subspace l2 = span_names(h, "L2", {"xi1s", "xi2s"});
    CHECK(theta_inverse(l1, l2).is_one());

    // Rescaling a generator scales the determinant by the same unit.
    Subspace l1r = span(h, "L1r", {{{"xi1", "1 + t^2"}}, {{"xi2", "1"}}});
    CHECK(theta_inverse(l1r, l2) == parse_scalar("1 + t^2", ring));

    // A graph family against its base: determinant proportional to t^2.
    PfInput in;
    in.ring = ring;
    in.phi = {{Scalar(ring), parse_scalar("t", ring)},
              {parse_scalar("-t", ring), Scalar(ring)}};
    in.lambda = {Scalar(ring), Scalar(ring)};
    auto hp = pf_space(ring, 2);
    Subspace graph = pf_subspace(in, hp);
    Subspace kill = span_names(hp, "L", {"p1", "p2"});
    Scalar ti = theta_inverse(graph, kill);
    CHECK((ti == parse_scalar("t^2", ring) || ti == parse_scalar("0 - t^2", ring)));

    CHECK_THROWS_AS(theta_inverse(l1, l1), error);
}

TEST_CASE("theta-Pf-square ratio is constant across a family") {
    auto ring = make_ring({"t"}, {});
    PfInput in;
    in.ring = ring;
    in.phi = {{Scalar(ring), parse_scalar("t", ring)},
              {parse_scalar("-t", ring), Scalar(ring)}};
    in.lambda = {Scalar(ring), Scalar(ring)};
    auto h = pf_space(ring, 2);
    Subspace graph = pf_subspace(in, h);
    Subspace kill = span_names(h, "L", {"p1", "p2"});

    Scalar ti = theta_inverse(graph, kill); // proportional to t^2
    Scalar v = pf_oracle(in, Mode::generic()).coefficient;
    Scalar ratio = ti * (v * v).inverse();
    CHECK(ratio.body().is_constant());
    Rational c = ratio.body().constant_value();

    // Vanishing orders match at the degenerate point t = 0.
    CHECK(v.body().num().degree_in(0) == 1);
    CHECK(ti.body().num().degree_in(0) == 2);

    // A second family of the same odd rank gives the same constant.
    PfInput in2;
    in2.ring = ring;
    in2.phi = {{Scalar(ring), parse_scalar("1 + t^2", ring)},
               {parse_scalar("0 - 1 - t^2", ring), Scalar(ring)}};
    in2.lambda = {Scalar(ring), Scalar(ring)};
    Subspace graph2 = pf_subspace(in2, h);
    Scalar ti2 = theta_inverse(graph2, kill);
    Scalar v2 = pf_oracle(in2, Mode::generic()).coefficient;
    Scalar ratio2 = ti2 * (v2 * v2).inverse();
    CHECK(ratio2.body().is_constant());
    CHECK(ratio2.body().constant_value() == c);
}
