#include "fermat/error.hpp"
#include "fermat/poly.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <numbers>

using namespace fermat;

namespace {

const CNum I(0.0, 1.0);
const double PI = std::numbers::pi;

Poly z(std::size_t n, std::size_t j) { return Poly::variable(n, j); }
Poly k(std::size_t n, CNum v) { return Poly::constant(n, v); }
Monomial mono(std::vector<unsigned> e) { return Monomial(std::move(e)); }

} // namespace

TEST_CASE("addition") {
    CHECK((z(2, 0) + (-z(2, 0))).is_zero());
    const Poly s = poly_add(z(2, 0) + z(2, 1), z(2, 0) - z(2, 1));
    CHECK(s.terms().size() == 1);
    CHECK(s.coeff(mono({1, 0})) == CNum(2.0));
    const Poly cube = (z(2, 0) - z(2, 1)).pow(3);
    CHECK(poly_add(cube, Poly(2)).approx_equal(cube));
    CHECK_THROWS_AS(z(2, 0) + z(3, 0), DimensionMismatch);
}

TEST_CASE("multiplication") {
    const Poly a = z(2, 0) - z(2, 1), b = z(2, 0) + z(2, 1);
    const Poly d = poly_mul(a, b);
    CHECK(d.coeff(mono({2, 0})) == CNum(1.0));
    CHECK(d.coeff(mono({0, 2})) == CNum(-1.0));
    CHECK(d.terms().size() == 2);

    // binomial coefficients written out by hand
    const Poly cube = poly_mul(a.pow(2), a);
    CHECK(cube.terms().size() == 4);
    CHECK(cube.coeff(mono({3, 0})) == CNum(1.0));
    CHECK(cube.coeff(mono({2, 1})) == CNum(-3.0));
    CHECK(cube.coeff(mono({1, 2})) == CNum(3.0));
    CHECK(cube.coeff(mono({0, 3})) == CNum(-1.0));

    CHECK(poly_mul(cube, Poly(2)).is_zero());
    CHECK_THROWS_AS(poly_mul(z(1, 0), z(2, 0)), DimensionMismatch);
}

TEST_CASE("shift") {
    const Poly s = poly_shift(z(1, 0), ShiftVector{PI * I});
    CHECK(s.coeff(mono({1})) == CNum(1.0));
    CHECK(oracle::close(s.constant_term(), PI * I));

    const Poly cube = (z(2, 0) - z(2, 1)).pow(3);
    CHECK(poly_shift(cube, ShiftVector{PI * I, PI * I}).approx_equal(cube));

    const Poly sq = poly_shift(z(1, 0).pow(2), ShiftVector{1.0});
    CHECK(sq.coeff(mono({2})) == CNum(1.0));
    CHECK(sq.coeff(mono({1})) == CNum(2.0));
    CHECK(sq.constant_term() == CNum(1.0));
    CHECK_THROWS_AS(poly_shift(cube, ShiftVector{1.0}), DimensionMismatch);
}

TEST_CASE("shift agrees with evaluation at the moved point") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + trial % 3;
        const Poly p = oracle::rand_poly(rng, n, 5, 6);
        ShiftVector c(n);
        std::vector<CNum> pt(n), moved(n);
        for (std::size_t j = 0; j < n; ++j) {
            c[j] = oracle::rand_c(rng, 1.5);
            pt[j] = oracle::rand_c(rng, 1.5);
            moved[j] = pt[j] + c[j];
        }
        CHECK(oracle::close(p.shift(c).eval(pt), oracle::eval_terms(p, moved, rng), 1e-10));
    }
}

TEST_CASE("partial derivative") {
    const Poly p = z(2, 0).pow(2) * z(2, 1);
    const Poly d = poly_partial(p, 1);
    CHECK(d.terms().size() == 1);
    CHECK(d.coeff(mono({1, 1})) == CNum(2.0));
    CHECK(poly_partial(z(2, 0).pow(3), 2).is_zero());

    const Poly a = z(2, 0) - z(2, 1);
    CHECK(poly_partial(a.pow(3), 1).approx_equal(a.pow(2) * CNum(3.0)));
    CHECK_THROWS_AS(poly_partial(p, 3), IndexOutOfRange);
    CHECK_THROWS_AS(poly_partial(p, 0), IndexOutOfRange);
}

TEST_CASE("partial derivative against central differences") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + trial % 3;
        const Poly p = oracle::rand_poly(rng, n, 4, 5);
        std::vector<CNum> pt(n);
        for (auto &x : pt)
            x = oracle::rand_c(rng, 1.0);
        const std::size_t var = trial % n;
        const CNum fd =
            oracle::central_diff([&](const std::vector<CNum> &x) { return p.eval(x); }, pt, var, 1);
        CHECK(oracle::close(p.partial(var).eval(pt), fd, 1e-7));
    }
}

TEST_CASE("evaluation") {
    const Poly cube = (z(2, 0) - z(2, 1)).pow(3);
    CHECK(poly_eval(cube, std::vector<CNum>{2.0, 1.0}) == CNum(1.0));
    CHECK(oracle::close(poly_eval(z(2, 0) + z(2, 1), std::vector<CNum>{PI * I, PI * I}), 2.0 * PI * I));

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const Poly p = oracle::rand_poly(rng, 3, 6, 8);
        std::vector<CNum> pt{oracle::rand_c(rng, 2), oracle::rand_c(rng, 2), oracle::rand_c(rng, 2)};
        CHECK(oracle::close(p.eval(pt), oracle::eval_terms(p, pt, rng), 1e-12));
    }
}

TEST_CASE("ring axioms hold canonically") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const Poly a = oracle::rand_poly(rng, 2, 3, 4), b = oracle::rand_poly(rng, 2, 3, 4),
                   c = oracle::rand_poly(rng, 2, 3, 4);
        CHECK((a + b).approx_equal(b + a));
        CHECK((a * b).approx_equal(b * a));
        CHECK(((a * b) * c).approx_equal(a * (b * c)));
        CHECK((a * (b + c)).approx_equal(a * b + a * c));
        CHECK((a - a).is_zero());
        CHECK((a * k(2, 1.0)).approx_equal(a));
    }
}

TEST_CASE("normalization drops near-zero coefficients and rejects non-finite ones") {
    const Poly tiny = z(1, 0) + k(1, 1e-12);
    CHECK(tiny.terms().size() == 1);
    const Poly loose = Poly::constant(1, 1e-6, 1e-5);
    CHECK(loose.is_zero());
    CHECK_THROWS_AS(Poly::constant(1, CNum(std::numeric_limits<double>::infinity(), 0.0)),
                    OverflowGuard);
}

TEST_CASE("graded lexicographic order") {
    GradedLex lt;
    CHECK(lt(mono({2, 0}), mono({1, 0})));  // higher degree first
    CHECK(lt(mono({2, 0}), mono({1, 1})));  // z1 dominates on ties
    CHECK(lt(mono({1, 1}), mono({0, 2})));
    CHECK_FALSE(lt(mono({0, 2}), mono({0, 2})));
    const Poly p = z(2, 1).pow(2) + z(2, 0) + z(2, 0).pow(2) + k(2, 1.0);
    std::vector<Monomial> order;
    for (const auto &[m, c] : p.terms())
        order.push_back(m);
    CHECK(order == std::vector<Monomial>{mono({2, 0}), mono({0, 2}), mono({1, 0}), mono({0, 0})});
}

TEST_CASE("degenerate shift c = 0 is the identity") {
    const Poly p = (z(2, 0) + z(2, 1)).pow(2);
    CHECK(p.shift(ShiftVector{0.0, 0.0}).approx_equal(p));
}
