#include "fermat/error.hpp"
#include "fermat/families.hpp"
#include "fermat/sampler.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <numbers>

using namespace fermat;

namespace {

const CNum I(0.0, 1.0);
const double PI = std::numbers::pi;

Poly z(std::size_t n, std::size_t j) { return Poly::variable(n, j); }
Poly k(std::size_t n, CNum v) { return Poly::constant(n, v); }

bool all_pass(const FamilySpec &s) {
    const auto b = bindings(s);
    for (const auto &c : constraint_set(s))
        if (!check(c, b).pass)
            return false;
    return true;
}

bool residual_zero(const FamilySpec &s) {
    const Construction built = construct(s);
    const Residuals r = residuals(system_for(s, built), built.f, built.g, s.w);
    return r.r1.is_zero() && r.r2.is_zero();
}

FamilySpec difference_example() {
    FamilySpec s;
    s.theorem = Theorem::T1_i;
    s.n = 2;
    s.w = 3.0;
    s.c = {PI * I, PI * I};
    s.a = {1.0, 1.0};
    s.d1 = PI * I;
    s.d2 = -PI * I;
    s.phi = build_periodic(s.c, {PeriodicTerm{{1.0, -1.0}, {0.0, 0.0, 0.0, 1.0}}});
    return s;
}

} // namespace

TEST_CASE("periodic parts") {
    const ShiftVector c{PI * I, PI * I};
    const PeriodicPart cube = build_periodic(c, {PeriodicTerm{{1.0, -1.0}, {0.0, 0.0, 0.0, 1.0}}});
    CHECK(cube.realized.approx_equal((z(2, 0) - z(2, 1)).pow(3)));
    CHECK(cube.realized.shift(c).approx_equal(cube.realized));

    const PeriodicPart sq = build_periodic({1.0, 1.0}, {PeriodicTerm{{1.0, -1.0}, {0.0, 0.0, 1.0}}});
    CHECK(sq.realized.approx_equal((z(2, 0) - z(2, 1)).pow(2)));

    const ShiftVector c3{PI * I, 2.0 * PI * I, -PI * I};
    CHECK_THROWS_AS(build_periodic(c3, {PeriodicTerm{{1.0, -1.0, 0.0}, {0.0, 0.0, 1.0}}}), NotShiftInvariant);
    const auto defects =
        shift_defects(realize_periodic(3, {PeriodicTerm{{1.0, -1.0, 0.0}, {0.0, 0.0, 1.0}}}), c3);
    CHECK(oracle::close(defects.at(0), -PI * I));

    // a constant H is periodic for any form
    CHECK_NOTHROW(build_periodic(c3, {PeriodicTerm{{1.0, 0.0, 0.0}, {2.0}}}));
    CHECK_THROWS_AS(build_periodic(c, {PeriodicTerm{{1.0}, {1.0}}}), DimensionMismatch);
}

TEST_CASE("construct: difference system, first family") {
    const FamilySpec s = difference_example();
    const Construction b = construct(s);
    const Poly base = z(2, 0) + z(2, 1) + (z(2, 0) - z(2, 1)).pow(3);
    const CNum coef = 1.0 / (2.0 * std::sqrt(2.0));
    CHECK(b.f.approx_equal(ExpPoly::exp_term(k(2, coef), (base + k(2, PI * I)) * 0.5)));
    CHECK(b.g.approx_equal(ExpPoly::exp_term(k(2, coef), (base - k(2, PI * I)) * 0.5)));
    CHECK(b.g1.approx_equal(base + k(2, PI * I)));
    CHECK(all_pass(s));
    CHECK(residual_zero(s));
}

TEST_CASE("construct: partial-differential-difference, first family") {
    FamilySpec s;
    s.theorem = Theorem::T2_i;
    s.n = 2;
    s.k = 1;
    s.w = CNum(2.5, 0.5); // any admissible w
    s.a = {1.0, 1.0};
    s.xi1 = 1.0;
    s.xi2 = -1.0;
    s.c = {-std::log(2.0), -std::log(2.0)};
    s.d1 = PI * I;
    s.d2 = -PI * I;
    const Construction b = construct(s);
    const CNum amp = 2.0 / std::sqrt(2.0 * (1.0 + s.w));
    const Poly l = z(2, 0) + z(2, 1);
    CHECK(b.f.approx_equal(ExpPoly::exp_term(k(2, -amp), (l + k(2, s.d2)) * 0.5)));
    CHECK(b.g.approx_equal(ExpPoly::exp_term(k(2, amp), (l + k(2, s.d1)) * 0.5)));
    CHECK(all_pass(s));
    CHECK(residual_zero(s));

    // e^{L(c)} = (1/2)^2 * 1
    const auto cs = constraint_set(s);
    CHECK(oracle::close(cs.at(0).target, 0.25));
}

TEST_CASE("construct: shift-difference, second family") {
    FamilySpec s;
    s.theorem = Theorem::T3_ii;
    s.n = 2;
    s.k = 2;
    s.w = 2.0;
    s.alpha = I * std::sqrt(2.0);
    s.beta = 1.0;
    s.gamma = 1.0;
    s.c = {PI * I / 2.0, PI * I - s.alpha * PI * I / 2.0};
    const Construction b = construct(s);
    const TrinomialConstants tc = make_constants(2.0);
    const Poly p = z(2, 0) * s.alpha + z(2, 1) + k(2, 1.0);
    const CNum pre = 1.0 / (std::sqrt(2.0) * -2.0);
    CHECK(b.f.approx_equal(ExpPoly::exp_term(k(2, tc.A1 * pre), p) + ExpPoly::exp_term(k(2, tc.A2 * pre), -p)));
    CHECK(b.g.approx_equal(ExpPoly::exp_term(k(2, tc.A1 * pre), -p) + ExpPoly::exp_term(k(2, tc.A2 * pre), p)));
    CHECK(all_pass(s));
    CHECK(residual_zero(s));

    const auto cs = constraint_set(s);
    REQUIRE(cs.size() == 3);
    CHECK(oracle::close(cs[0].target, -1.0));
    CHECK(oracle::close(cs[2].target, -2.0));
}

TEST_CASE("constraint set of the two-exponent subcase (a)") {
    FamilySpec s;
    s.theorem = Theorem::T1_ii;
    s.subcase = Subcase::A;
    s.n = 2;
    s.c = {1.0, 1.0};
    s.a = {1.0, 0.0};
    s.b = {0.0, 1.0};
    const auto cs = constraint_set(s);
    REQUIRE(cs.size() == 4);
    for (const auto &c : cs)
        CHECK(oracle::close(c.target, 1.0));
}

TEST_CASE("construct rejects invalid specs") {
    FamilySpec s = difference_example();
    s.c = {0.0, 0.0};
    CHECK_THROWS_AS(construct(s), InvalidCase);

    s = difference_example();
    s.c = {PI * I, 0.5 * PI * I};
    CHECK_THROWS_AS(construct(s), NotShiftInvariant);

    FamilySpec t3 = sample_spec(Theorem::T3_ii, Subcase::None, 1);
    t3.k = 3;
    CHECK_THROWS_AS(construct(t3), InvalidCase);
    t3.k = 2;
    t3.alpha = 0.0;
    CHECK_THROWS_AS(construct(t3), InvalidCase);

    FamilySpec t2 = sample_spec(Theorem::T2_i, Subcase::None, 1);
    t2.a[0] = 0.0;
    CHECK_THROWS_AS(construct(t2), InvalidCase);

    FamilySpec two = sample_spec(Theorem::T1_ii, Subcase::B, 1);
    two.b = two.a;
    two.psi = two.phi;
    CHECK_THROWS_AS(construct(two), InvalidCase);

    FamilySpec sub = difference_example();
    sub.subcase = Subcase::A;
    CHECK_THROWS_AS(construct(sub), InvalidCase);

    // A1 xi + A2 / xi = 0 at xi^2 = -A2/A1
    FamilySpec zero = difference_example();
    const TrinomialConstants tc = make_constants(3.0);
    zero.xi1 = std::sqrt(-tc.A2 / tc.A1);
    CHECK_THROWS_AS(construct(zero), ZeroCoefficient);

    FamilySpec w = difference_example();
    w.w = 1.0;
    CHECK_THROWS_AS(construct(w), DegenerateW);
}

TEST_CASE("sampled specs satisfy their relations and solve the system") {
    for (const auto &[th, sub] : all_cases()) {
        CAPTURE(to_string(th));
        CAPTURE(to_string(sub));
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const FamilySpec s = sample_spec(th, sub, seed);
            CHECK(all_pass(s));
            CHECK(residual_zero(s));
            if (th == Theorem::T3_ii)
                CHECK(s.k % 2 == 0);
        }
    }
    CHECK(all_cases().size() == 20);
}

TEST_CASE("negative controls break a relation and the solution") {
    for (const auto &[th, sub] : all_cases()) {
        CAPTURE(to_string(th));
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const FamilySpec s = negative_control(sample_spec(th, sub, seed));
            CHECK_FALSE(all_pass(s));
            CHECK_FALSE(residual_zero(s));
        }
    }
}

TEST_CASE("sampler is deterministic and construct is a function of the spec") {
    const FamilySpec a = sample_spec(Theorem::T2_iii, Subcase::C, 42);
    const FamilySpec b = sample_spec(Theorem::T2_iii, Subcase::C, 42);
    CHECK(construct(a).f.approx_equal(construct(b).f));
    CHECK(construct(a).g.approx_equal(construct(b).g));
}

TEST_CASE("a second-family spec retargeted to the third family still solves") {
    FamilySpec ii = sample_spec(Theorem::T1_ii, Subcase::A, 3);
    FamilySpec iii = ii;
    iii.theorem = Theorem::T1_iii;
    // re-solve L1, L2 for the A2/A1-adjusted targets
    const TrinomialConstants tc = make_constants(ii.w);
    iii.a.back() = solve_linear_for_last(iii.a, iii.c, std::log(tc.A2 / tc.A1));
    iii.b.back() = solve_linear_for_last(iii.b, iii.c, std::log(tc.A1 / tc.A2));
    CHECK(all_pass(iii));
    CHECK(residual_zero(iii));
    CHECK_FALSE(construct(iii).g.approx_equal(construct(ii).g));
}

TEST_CASE("case names") {
    for (const auto &[th, sub] : all_cases()) {
        CHECK(theorem_from_string(to_string(th)) == th);
        CHECK(subcase_from_string(to_string(sub)) == sub);
    }
    CHECK_THROWS_AS(theorem_from_string("T4"), InvalidCase);
    CHECK(system_type_of(Theorem::T2_ii) == SystemType::PartialDiffDifference);
}
