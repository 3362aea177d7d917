#include "fermat/sampler.hpp"

#include "fermat/error.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace fermat {

namespace {

constexpr double kPi = std::numbers::pi;
const CNum kI(0.0, 1.0);

class Draw {
public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}

    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    long branch() { return std::uniform_int_distribution<long>(-2, 2)(rng_); }
    unsigned pick(unsigned lo, unsigned hi) {
        return std::uniform_int_distribution<unsigned>(lo, hi)(rng_);
    }
    bool coin() { return pick(0, 1) == 1; }

    CNum complex(double r) { return {real(-r, r), real(-r, r)}; }
    /// Magnitude in [lo, hi], uniform phase.
    CNum polar(double lo, double hi) { return std::polar(real(lo, hi), real(-kPi, kPi)); }

    CNum w() {
        for (;;) {
            CNum w = coin() ? CNum(real(-3.0, 3.0), 0.0) : complex(2.5);
            if (std::abs(w) > 0.1 && std::abs(w * w - 1.0) > 0.1)
                return w;
        }
    }

    ShiftVector shift(std::size_t n) {
        ShiftVector c(n);
        for (auto &x : c)
            x = polar(0.5, 1.5);
        return c;
    }

    /// Random polynomial H of degree <= 3 in a random form annihilating c;
    /// the last component of c must be non-zero.
    PeriodicTerm annihilating(const ShiftVector &c) {
        std::vector<CNum> d(c.size());
        CNum rest = 0.0;
        for (std::size_t j = 0; j + 1 < c.size(); ++j) {
            d[j] = complex(1.0);
            rest += d[j] * c[j];
        }
        d.back() = -rest / c.back();
        return PeriodicTerm{d, h(pick(0, 3))};
    }

    std::vector<CNum> h(unsigned degree) {
        std::vector<CNum> out(degree + 1);
        for (auto &x : out)
            x = complex(0.3);
        return out;
    }

    PeriodicPart periodic(const ShiftVector &c, unsigned count) {
        std::vector<PeriodicTerm> terms;
        for (unsigned i = 0; i < count; ++i)
            terms.push_back(annihilating(c));
        return build_periodic(c, std::move(terms));
    }

    /// A z2-only part; non-constant only when c2 == 0.
    PeriodicPart z2_part(const ShiftVector &c) {
        const bool free = c[1] == CNum(0.0);
        return build_periodic(c, {PeriodicTerm{{0.0, 1.0}, h(free ? pick(1, 3) : 0)}});
    }

    CNum log_branch(CNum target) { return solve_exp(target, branch()).value; }

private:
    std::mt19937_64 rng_;
};

CNum cpow(CNum base, unsigned e) {
    CNum r = 1.0;
    for (unsigned i = 0; i < e; ++i)
        r *= base;
    return r;
}

std::pair<double, double> signs(Subcase s) {
    switch (s) {
    case Subcase::A:
        return {1.0, 1.0};
    case Subcase::B:
        return {1.0, -1.0};
    case Subcase::C:
        return {-1.0, 1.0};
    case Subcase::D:
        return {-1.0, -1.0};
    default:
        throw InvalidCase("subcase required");
    }
}

/// Random leading coefficients with the last one fixed by `value` = L(c).
std::vector<CNum> solve_form(Draw &dr, const ShiftVector &c, CNum value) {
    std::vector<CNum> a(c.size());
    for (std::size_t j = 0; j + 1 < a.size(); ++j)
        a[j] = dr.complex(1.0);
    a.back() = solve_linear_for_last(a, c, value);
    return a;
}

bool leading_ok(const TrinomialConstants &tc, CNum xi1, CNum xi2) {
    for (CNum v : {tc.A1 * xi1 + tc.A2 / xi1, tc.A1 * xi2 + tc.A2 / xi2, tc.A2 * xi1 + tc.A1 / xi1,
                   tc.A2 * xi2 + tc.A1 / xi2})
        if (std::abs(v) < 1e-2)
            return false;
    return true;
}

FamilySpec sample_once(Theorem th, Subcase sc, Draw &dr) {
    FamilySpec s;
    s.theorem = th;
    s.subcase = sc;
    s.w = dr.w();
    const TrinomialConstants tc = make_constants(s.w);
    const CNum A1 = tc.A1, A2 = tc.A2;

    switch (th) {
    case Theorem::T1_i:
    case Theorem::T2_i: {
        const bool t2 = th == Theorem::T2_i;
        s.n = t2 ? 2 : dr.pick(1, 3);
        do {
            s.xi1 = dr.polar(0.5, 2.0);
            s.xi2 = dr.polar(0.5, 2.0);
        } while (!leading_ok(tc, s.xi1, s.xi2));
        const CNum K1 = A1 * s.xi1 + A2 / s.xi1, K2 = A1 * s.xi2 + A2 / s.xi2;
        const CNum K1p = A2 * s.xi1 + A1 / s.xi1, K2p = A2 * s.xi2 + A1 / s.xi2;
        s.k = t2 ? dr.pick(1, 3) : 1;
        s.c = dr.shift(s.n);
        CNum hk = 1.0;
        CNum lc;
        if (t2) {
            const CNum a1 = dr.polar(0.5, 2.0);
            hk = cpow(a1 / 2.0, s.k);
            lc = dr.log_branch(hk * hk * K2p * K1p / (K1 * K2));
            if (dr.coin()) {
                s.c[1] = 0.0;
                s.a = {a1, dr.complex(1.0)};
                s.c[0] = lc / a1;
            } else {
                s.a = {a1, 0.0};
                s.a[1] = solve_linear_for_last(s.a, s.c, lc);
            }
            s.phi = dr.z2_part(s.c);
        } else {
            lc = dr.log_branch(K2p * K1p / (K1 * K2));
            s.a = solve_form(dr, s.c, lc);
            s.phi = s.n > 1 ? dr.periodic(s.c, dr.pick(0, 2)) : build_periodic(s.c, {});
        }
        s.d2 = dr.complex(1.0);
        s.d1 = s.d2 + 2.0 * dr.log_branch(hk * K2p / K1) - lc;
        break;
    }
    case Theorem::T1_ii:
    case Theorem::T1_iii:
    case Theorem::T2_ii:
    case Theorem::T2_iii: {
        const auto [s1, s2] = signs(sc);
        const bool t2 = th == Theorem::T2_ii || th == Theorem::T2_iii;
        const bool third = th == Theorem::T1_iii || th == Theorem::T2_iii;
        s.n = t2 ? 2 : dr.pick(1, 3);
        s.k = t2 ? dr.pick(1, 3) : 1;
        s.c = dr.shift(s.n);
        CNum t1 = s1, tt2 = s2;
        if (third) {
            t1 *= A2 / A1;
            tt2 *= A1 / A2;
        }
        if (t2) {
            const CNum a1 = dr.polar(0.5, 2.0), b1 = dr.polar(0.5, 2.0);
            s.a = {a1, 0.0};
            s.b = {b1, 0.0};
            s.a[1] = solve_linear_for_last(s.a, s.c, dr.log_branch(t1 * cpow(a1, s.k)));
            s.b[1] = solve_linear_for_last(s.b, s.c, dr.log_branch(tt2 * cpow(b1, s.k)));
            s.phi = dr.z2_part(s.c);
            s.psi = dr.z2_part(s.c);
        } else {
            s.a = solve_form(dr, s.c, dr.log_branch(t1));
            s.b = solve_form(dr, s.c, dr.log_branch(tt2));
            s.phi = s.n > 1 ? dr.periodic(s.c, dr.pick(0, 2)) : build_periodic(s.c, {});
            s.psi = s.n > 1 ? dr.periodic(s.c, dr.pick(0, 2)) : build_periodic(s.c, {});
        }
        s.d2 = dr.complex(1.0);
        s.d4 = dr.complex(1.0);
        s.d1 = s.d2 + dr.log_branch(s1);
        s.d3 = s.d4 + dr.log_branch(s2);
        break;
    }
    case Theorem::T3_i:
    case Theorem::T3_ii: {
        s.n = 2;
        s.eta = kI * kPi * static_cast<double>(dr.pick(0, 1));
        const CNum e = std::exp(s.eta);
        CNum target, lc;
        if (th == Theorem::T3_i) {
            s.k = dr.pick(1, 4);
            const double sigma = s.k % 2 == 0 ? 1.0 : -1.0;
            target = -(sigma * A1 * A1 + A2 * A2) / (sigma * A1 * A2 * e);
            lc = dr.log_branch(A2 * e / (sigma * A1 * target + A2 * e));
        } else {
            s.k = dr.coin() ? 4 : 2;
            target = -2.0 * e;
            lc = dr.log_branch(-1.0);
        }
        // any k-th root of the required alpha^k
        const double root = static_cast<double>(dr.pick(0, s.k - 1));
        s.alpha = std::pow(target, 1.0 / s.k) * std::exp(2.0 * kPi * kI * root / double(s.k));
        s.beta = dr.complex(1.0);
        s.gamma = dr.complex(1.0);
        s.c = dr.shift(2);
        if (dr.coin()) {
            s.c[1] = 0.0;
            s.c[0] = lc / s.alpha;
        } else {
            if (std::abs(s.beta) < 0.2)
                s.beta = 1.0;
            s.c[1] = (lc - s.alpha * s.c[0]) / s.beta;
        }
        s.phi = dr.z2_part(s.c);
        break;
    }
    }
    return s;
}

} // namespace

FamilySpec sample_spec(Theorem theorem, Subcase subcase, std::uint64_t seed) {
    Draw dr(seed);
    // Rejection for the rare draw where E1 and E2 coincide or a factor vanishes.
    for (int attempt = 0; attempt < 64; ++attempt) {
        FamilySpec s = sample_once(theorem, subcase, dr);
        try {
            validate(s);
            return s;
        } catch (const InvalidCase &) {
        } catch (const SingularSolve &) {
        }
    }
    throw InvalidCase("sampler failed to produce a valid spec for " + to_string(theorem));
}

FamilySpec negative_control(const FamilySpec &spec) {
    FamilySpec s = spec;
    switch (spec.theorem) {
    case Theorem::T1_i:
    case Theorem::T2_i:
        s.d1 += 2.0 * kPi * kI;
        break;
    case Theorem::T3_i:
    case Theorem::T3_ii:
        s.eta += kPi * kI;
        break;
    default:
        s.d3 += kPi * kI;
        break;
    }
    return s;
}

} // namespace fermat
