#include "fermat/error.hpp"
#include "fermat/trinomial.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <numbers>

using namespace fermat;

namespace {

const CNum I(0.0, 1.0);
const double PI = std::numbers::pi;

Poly z(std::size_t n, std::size_t j) { return Poly::variable(n, j); }
Poly k(std::size_t n, CNum v) { return Poly::constant(n, v); }

/// A1, A2 straight from the defining formula with std::sqrt.
std::pair<CNum, CNum> reference_constants(CNum w) {
    const CNum p = std::sqrt(CNum(1.0 + w.real(), w.imag() == 0.0 ? 0.0 : w.imag()));
    const CNum m = std::sqrt(CNum(1.0 - w.real(), w.imag() == 0.0 ? 0.0 : -w.imag()));
    return {1.0 / (2.0 * p) + 1.0 / (2.0 * I * m), 1.0 / (2.0 * p) - 1.0 / (2.0 * I * m)};
}

SystemKind difference(std::size_t n, ShiftVector c, Poly g1, Poly g2) {
    SystemKind kind;
    kind.type = SystemType::Difference;
    kind.n = n;
    kind.c = std::move(c);
    kind.g1 = std::move(g1);
    kind.g2 = std::move(g2);
    return kind;
}

} // namespace

TEST_CASE("constants for w = 2 and w = 3") {
    const TrinomialConstants two = make_constants(2.0);
    CHECK(oracle::close(two.A1, -(3.0 - std::sqrt(3.0)) / 6.0));
    CHECK(oracle::close(two.A2, (3.0 + std::sqrt(3.0)) / 6.0));
    CHECK(two.A1.real() == doctest::Approx(-0.211325).epsilon(1e-6));

    const TrinomialConstants three = make_constants(3.0);
    CHECK(oracle::close(three.A1 + three.A2, 0.5));

    const TrinomialConstants iw = make_constants(I);
    CHECK(oracle::close(iw.A1 * iw.A2, 0.25));
}

TEST_CASE("constant identities") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 200; ++i) {
        const CNum w = oracle::rand_c(rng, 5.0);
        if (std::abs(w) < 1e-3 || std::abs(w * w - 1.0) < 1e-3)
            continue;
        const TrinomialConstants tc = make_constants(w);
        const auto [r1, r2] = reference_constants(w);
        CHECK(oracle::close(tc.A1, r1));
        CHECK(oracle::close(tc.A2, r2));
        CHECK(oracle::close(tc.A1 * tc.A2, 1.0 / (2.0 * (1.0 - w * w)), 1e-11));
        CHECK(oracle::close(tc.A1 * tc.A1 + tc.A2 * tc.A2, -w / (1.0 - w * w), 1e-11));
    }
}

TEST_CASE("degenerate w") {
    CHECK_THROWS_AS(make_constants(0.0), DegenerateW);
    CHECK_THROWS_AS(make_constants(1.0), DegenerateW);
    CHECK_THROWS_AS(make_constants(-1.0), DegenerateW);
    CHECK_NOTHROW(make_constants(1.0 + 1e-6));
}

TEST_CASE("quadratic form") {
    const CNum w(0.4, 0.2);
    const CNum a = 1.0 / std::sqrt(2.0 + 2.0 * w);
    const ExpPoly x = ExpPoly::constant(1, a);
    const ExpPoly q = q_form(x, x, w);
    REQUIRE(q.is_polynomial());
    CHECK(oracle::close(q.as_poly().constant_term(), 1.0));

    // w = 0: cos^2 + sin^2
    const Poly h = z(2, 0) * z(2, 1) + z(2, 1).pow(3);
    const ExpPoly ep = ExpPoly::exp_of(h), em = ExpPoly::exp_of(-h);
    const ExpPoly cs = q_form((ep + em) * CNum(0.5), (ep - em) * (1.0 / (2.0 * I)), 0.0);
    REQUIRE(cs.is_polynomial());
    CHECK(cs.as_poly().approx_equal(k(2, 1.0)));

    // the generic pair built from A1, A2, checked numerically as well
    const TrinomialConstants tc = make_constants(w);
    const CNum s = 1.0 / std::sqrt(2.0);
    const ExpPoly f = (ExpPoly::exp_term(k(2, tc.A1), h) + ExpPoly::exp_term(k(2, tc.A2), -h)) * s;
    const ExpPoly g = (ExpPoly::exp_term(k(2, tc.A2), h) + ExpPoly::exp_term(k(2, tc.A1), -h)) * s;
    const ExpPoly one = q_form(f, g, w);
    REQUIRE(one.is_polynomial());
    CHECK(one.as_poly().approx_equal(k(2, 1.0)));
    std::mt19937_64 rng(6);
    for (int i = 0; i < 20; ++i) {
        const std::vector<CNum> p{oracle::rand_c(rng, 1), oracle::rand_c(rng, 1)};
        const CNum fv = oracle::eval_exp(f, p), gv = oracle::eval_exp(g, p);
        CHECK(oracle::close(fv * fv + 2.0 * w * fv * gv + gv * gv, 1.0, 1e-10));
    }
}

TEST_CASE("u, v transform") {
    const ExpPoly e = ExpPoly::exp_of(z(2, 0) - z(2, 1) * 2.0);
    const UV same = uv_transform(e, e);
    CHECK(same.u.approx_equal(e * std::sqrt(2.0)));
    CHECK(same.v.is_zero());

    const UV unit = uv_transform(ExpPoly::constant(2, 1.0), ExpPoly(2));
    CHECK(oracle::close(unit.u.as_poly().constant_term(), 1.0 / std::sqrt(2.0)));
    CHECK(oracle::close(unit.v.as_poly().constant_term(), 1.0 / std::sqrt(2.0)));

    std::mt19937_64 rng(9);
    for (int i = 0; i < 20; ++i) {
        const CNum w = oracle::rand_c(rng, 2.0);
        const ExpPoly f = ExpPoly::exp_term(oracle::rand_poly(rng, 2, 2, 2), oracle::rand_poly(rng, 2, 2, 2));
        const ExpPoly g = ExpPoly::exp_term(oracle::rand_poly(rng, 2, 2, 2), oracle::rand_poly(rng, 2, 2, 2));
        const UV uv = uv_transform(f, g);
        const ExpPoly diff = q_form(f, g, w) - (uv.u * uv.u * (1.0 + w) + uv.v * uv.v * (1.0 - w));
        CHECK(diff.is_zero());
    }
}

TEST_CASE("residuals of the difference-system example") {
    const Poly base = z(2, 0) + z(2, 1) + (z(2, 0) - z(2, 1)).pow(3);
    const Poly g1 = base + k(2, PI * I), g2 = base - k(2, PI * I);
    const CNum coef = 1.0 / (2.0 * std::sqrt(2.0));
    const ExpPoly f = ExpPoly::exp_term(k(2, coef), g1 * 0.5);
    const ExpPoly g = ExpPoly::exp_term(k(2, coef), g2 * 0.5);
    const SystemKind kind = difference(2, {PI * I, PI * I}, g1, g2);
    const Residuals r = residuals(kind, f, g, 3.0);
    CHECK(r.r1.is_zero());
    CHECK(r.r2.is_zero());

    // perturbing d1 breaks it, confirmed at a sample point without the engine
    const Poly g1p = base + k(2, PI * I + 0.1);
    const ExpPoly fp = ExpPoly::exp_term(k(2, coef), g1p * 0.5);
    const Residuals rp = residuals(difference(2, {PI * I, PI * I}, g1p, g2), fp, g, 3.0);
    CHECK_FALSE(rp.r1.is_zero());
    const std::vector<CNum> pt{0.3, -0.2}, moved{0.3 + PI * I, -0.2 + PI * I};
    const CNum fv = oracle::eval_exp(fp, pt), gv = oracle::eval_exp(g, moved);
    const CNum r1 = fv * fv + 6.0 * fv * gv + gv * gv - std::exp(g1p.eval(pt));
    CHECK(std::abs(r1) > 1e-3);
}

TEST_CASE("residuals of the partial-differential-difference example") {
    const TrinomialConstants tc = make_constants(2.0);
    const Poly l1 = z(2, 0) + z(2, 1), l2 = z(2, 0) - z(2, 1) * 2.0;
    const CNum d1 = 2.0 * PI * I, d2 = 0.0, d3 = 2.0 * PI * I, d4 = 0.0;
    const CNum s = 1.0 / std::sqrt(2.0);
    // L1(c) = L2(c) = 2 pi i drop out of the exponents
    const ExpPoly f = (ExpPoly::exp_term(k(2, tc.A2 * s), l2 + k(2, d4)) +
                       ExpPoly::exp_term(k(2, tc.A1 * s), l1 + k(2, d2)));
    const ExpPoly g = (ExpPoly::exp_term(k(2, tc.A2 * s), l1 + k(2, d1)) +
                       ExpPoly::exp_term(k(2, tc.A1 * s), l2 + k(2, d3)));
    SystemKind kind;
    kind.type = SystemType::PartialDiffDifference;
    kind.n = 2;
    kind.k = 1;
    kind.c = {8.0 * PI * I / 3.0, -2.0 * PI * I / 3.0};
    kind.g1 = l1 + l2 + k(2, d1 + d3);
    kind.g2 = l1 + l2 + k(2, d2 + d4);
    const Residuals r = residuals(kind, f, g, 2.0);
    CHECK(r.r1.is_zero());
    CHECK(r.r2.is_zero());
}

TEST_CASE("system validation") {
    SystemKind kind = difference(3, {1.0, 1.0, 1.0}, Poly(3), Poly(3));
    CHECK_NOTHROW(kind.validate());
    kind.type = SystemType::ShiftDifference;
    CHECK_THROWS_AS(kind.validate(), InvalidCase);
    kind = difference(2, {1.0}, Poly(2), Poly(2));
    CHECK_THROWS_AS(kind.validate(), DimensionMismatch);
    kind = difference(2, {1.0, 1.0}, Poly(2), Poly(2));
    kind.k = 0;
    CHECK_THROWS_AS(kind.validate(), InvalidCase);
    CHECK(system_type_from_string("shift-difference") == SystemType::ShiftDifference);
    CHECK_THROWS_AS(system_type_from_string("nope"), InvalidCase);
}
