#include "fermat/families.hpp"

#include "fermat/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fermat {

namespace {

const CNum kInvSqrt2 = 1.0 / std::sqrt(2.0);

CNum cpow(CNum base, unsigned e) {
    CNum r = 1.0;
    for (unsigned i = 0; i < e; ++i)
        r *= base;
    return r;
}

CNum dot(std::span<const CNum> x, std::span<const CNum> y) {
    CNum s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j)
        s += x[j] * y[j];
    return s;
}

bool h_is_constant(const PeriodicTerm &t) {
    for (std::size_t m = 1; m < t.poly.size(); ++m)
        if (t.poly[m] != CNum(0.0))
            return false;
    return true;
}

std::pair<double, double> subcase_signs(Subcase s) {
    switch (s) {
    case Subcase::A:
        return {1.0, 1.0};
    case Subcase::B:
        return {1.0, -1.0};
    case Subcase::C:
        return {-1.0, 1.0};
    case Subcase::D:
        return {-1.0, -1.0};
    case Subcase::None:
        break;
    }
    throw InvalidCase("subcase required");
}

Poly part_or_zero(const PeriodicPart &p, std::size_t n, double tol) {
    if (p.realized.dim() == n)
        return p.realized.with_tol(tol);
    if (p.terms.empty() && p.realized.is_zero())
        return Poly(n, tol);
    throw DimensionMismatch("periodic part dimension " + std::to_string(p.realized.dim()) +
                            " differs from n = " + std::to_string(n));
}

struct Leading {
    CNum K1, K2, K1p, K2p; // A1 xi + A2/xi and A2 xi + A1/xi for xi1, xi2
};

Leading leading_factors(const TrinomialConstants &tc, CNum xi1, CNum xi2) {
    return Leading{tc.A1 * xi1 + tc.A2 / xi1, tc.A1 * xi2 + tc.A2 / xi2, tc.A2 * xi1 + tc.A1 / xi1,
                   tc.A2 * xi2 + tc.A1 / xi2};
}

bool is_t1(Theorem t) { return t == Theorem::T1_i || t == Theorem::T1_ii || t == Theorem::T1_iii; }
bool is_t2(Theorem t) { return t == Theorem::T2_i || t == Theorem::T2_ii || t == Theorem::T2_iii; }
bool is_t3(Theorem t) { return t == Theorem::T3_i || t == Theorem::T3_ii; }
bool two_exponent(Theorem t) {
    return t == Theorem::T1_ii || t == Theorem::T1_iii || t == Theorem::T2_ii ||
           t == Theorem::T2_iii;
}

/// The T3 exponent polynomial, alpha z1 + beta z2 + Phi1 + gamma.
Poly t3_exponent(const FamilySpec &spec, double tol) {
    const std::vector<CNum> lin{spec.alpha, spec.beta};
    const CNum shift = spec.gamma_counted_twice ? 2.0 * spec.gamma : spec.gamma;
    return Poly::linear(lin, tol) + part_or_zero(spec.phi, 2, tol) +
           Poly::constant(2, shift, tol);
}

} // namespace

PeriodicPart realize_periodic(std::size_t dim, std::vector<PeriodicTerm> terms, double tol) {
    Poly sum(dim, tol);
    for (const auto &t : terms) {
        if (t.form.size() != dim)
            throw DimensionMismatch("linear form of length " + std::to_string(t.form.size()) +
                                    " in dimension " + std::to_string(dim));
        const Poly s = Poly::linear(t.form, tol);
        // Horner in t = d . z
        Poly h(dim, tol);
        for (auto it = t.poly.rbegin(); it != t.poly.rend(); ++it)
            h = h * s + Poly::constant(dim, *it, tol);
        sum = sum + h;
    }
    return PeriodicPart{std::move(terms), sum};
}

PeriodicPart build_periodic(const ShiftVector &c, std::vector<PeriodicTerm> terms, double tol) {
    for (const auto &t : terms) {
        if (t.form.size() != c.size())
            throw DimensionMismatch("linear form of length " + std::to_string(t.form.size()) +
                                    " for shift of length " + std::to_string(c.size()));
        const CNum dc = dot(t.form, c);
        double scale = 0.0;
        for (std::size_t j = 0; j < c.size(); ++j)
            scale += std::abs(t.form[j]) * std::abs(c[j]);
        if (std::abs(dc) > tol * std::max(1.0, scale) && !h_is_constant(t)) {
            std::string form;
            for (std::size_t j = 0; j < t.form.size(); ++j)
                form += (j ? "," : "") + std::to_string(t.form[j].real()) + "+" +
                        std::to_string(t.form[j].imag()) + "i";
            throw NotShiftInvariant("linear form (" + form + ") has d.c = " +
                                    std::to_string(dc.real()) + "+" + std::to_string(dc.imag()) +
                                    "i");
        }
    }
    return realize_periodic(c.size(), std::move(terms), tol);
}

std::vector<CNum> shift_defects(const PeriodicPart &part, const ShiftVector &c) {
    std::vector<CNum> out;
    for (const auto &t : part.terms)
        out.push_back(dot(t.form, c));
    return out;
}

std::string to_string(Theorem t) {
    switch (t) {
    case Theorem::T1_i:
        return "T1_i";
    case Theorem::T1_ii:
        return "T1_ii";
    case Theorem::T1_iii:
        return "T1_iii";
    case Theorem::T2_i:
        return "T2_i";
    case Theorem::T2_ii:
        return "T2_ii";
    case Theorem::T2_iii:
        return "T2_iii";
    case Theorem::T3_i:
        return "T3_i";
    case Theorem::T3_ii:
        return "T3_ii";
    }
    return "?";
}

std::string to_string(Subcase s) {
    switch (s) {
    case Subcase::None:
        return "";
    case Subcase::A:
        return "a";
    case Subcase::B:
        return "b";
    case Subcase::C:
        return "c";
    case Subcase::D:
        return "d";
    }
    return "?";
}

Theorem theorem_from_string(const std::string &s) {
    for (auto t : {Theorem::T1_i, Theorem::T1_ii, Theorem::T1_iii, Theorem::T2_i, Theorem::T2_ii,
                   Theorem::T2_iii, Theorem::T3_i, Theorem::T3_ii})
        if (to_string(t) == s)
            return t;
    throw InvalidCase("unknown family case '" + s + "'");
}

Subcase subcase_from_string(const std::string &s) {
    for (auto c : {Subcase::None, Subcase::A, Subcase::B, Subcase::C, Subcase::D})
        if (to_string(c) == s)
            return c;
    throw InvalidCase("unknown subcase '" + s + "'");
}

bool has_subcases(Theorem t) { return two_exponent(t); }

SystemType system_type_of(Theorem t) {
    if (is_t1(t))
        return SystemType::Difference;
    if (is_t2(t))
        return SystemType::PartialDiffDifference;
    return SystemType::ShiftDifference;
}

std::vector<std::pair<Theorem, Subcase>> all_cases() {
    std::vector<std::pair<Theorem, Subcase>> out;
    for (auto t : {Theorem::T1_i, Theorem::T1_ii, Theorem::T1_iii, Theorem::T2_i, Theorem::T2_ii,
                   Theorem::T2_iii, Theorem::T3_i, Theorem::T3_ii}) {
        if (has_subcases(t))
            for (auto s : {Subcase::A, Subcase::B, Subcase::C, Subcase::D})
                out.emplace_back(t, s);
        else
            out.emplace_back(t, Subcase::None);
    }
    return out;
}

void validate(const FamilySpec &spec, const ConstructOptions &opts) {
    const Theorem th = spec.theorem;
    if (has_subcases(th) != (spec.subcase != Subcase::None))
        throw InvalidCase(to_string(th) + (has_subcases(th) ? " requires a subcase a-d"
                                                            : " takes no subcase"));
    if (spec.n == 0)
        throw InvalidCase("dimension must be at least 1");
    if (!is_t1(th) && spec.n != 2)
        throw InvalidCase(to_string(th) + " is stated in C^2 (n must be 2)");
    if (spec.c.size() != spec.n)
        throw DimensionMismatch("shift vector length differs from n");
    if (std::all_of(spec.c.begin(), spec.c.end(), [](CNum x) { return std::abs(x) == 0.0; }))
        throw InvalidCase("shift c = 0 is degenerate");
    if (spec.k == 0)
        throw InvalidCase("order k must be at least 1");
    make_constants(spec.w);

    if (!is_t3(th)) {
        if (spec.a.size() != spec.n)
            throw DimensionMismatch("coefficients a must have length n");
        if (two_exponent(th) && spec.b.size() != spec.n)
            throw DimensionMismatch("coefficients b must have length n");
    }
    if (is_t2(th)) {
        if (std::abs(spec.a[0]) <= 1e-12)
            throw InvalidCase(to_string(th) + " requires a1 != 0");
        if (two_exponent(th) && std::abs(spec.b[0]) <= 1e-12)
            throw InvalidCase(to_string(th) + " requires b1 != 0");
    }
    if (th == Theorem::T3_ii && spec.k % 2 != 0)
        throw InvalidCase("T3_ii requires an even order k");
    if (is_t3(th) && std::abs(cpow(spec.alpha, spec.k)) < 1e-12)
        throw InvalidCase("alpha^k vanishes");
    if ((th == Theorem::T1_i || th == Theorem::T2_i) &&
        (std::abs(spec.xi1) == 0.0 || std::abs(spec.xi2) == 0.0))
        throw InvalidCase("xi1 and xi2 must be non-zero");

    const Poly phi = part_or_zero(spec.phi, spec.n, opts.tol);
    const Poly psi = part_or_zero(spec.psi, spec.n, opts.tol);
    if (!is_t1(th)) {
        if (!phi.depends_only_on(1) || !psi.depends_only_on(1))
            throw InvalidCase("periodic parts of " + to_string(th) + " must be polynomials in z2");
    }
    if (opts.require_periodic) {
        if (!phi.shift(spec.c).approx_equal(phi))
            throw NotShiftInvariant("Phi(z + c) != Phi(z)");
        if (!psi.shift(spec.c).approx_equal(psi))
            throw NotShiftInvariant("Psi(z + c) != Psi(z)");
    }
    if (two_exponent(th)) {
        const Poly e1 = Poly::linear(spec.a, opts.tol) + phi;
        const Poly e2 = Poly::linear(spec.b, opts.tol) + psi;
        if (e1.approx_equal(e2))
            throw InvalidCase("L1 + Phi must differ from L2 + Psi");
    }
}

Construction construct(const FamilySpec &spec, const ConstructOptions &opts) {
    validate(spec, opts);
    const double tol = opts.tol;
    const std::size_t n = spec.n;
    const TrinomialConstants tc = make_constants(spec.w);
    auto cst = [&](CNum v) { return Poly::constant(n, v, tol); };
    auto ex = [&](CNum coeff, const Poly &expo) { return ExpPoly::exp_term(cst(coeff), expo); };

    const Poly phi = part_or_zero(spec.phi, n, tol);
    const Poly psi = part_or_zero(spec.psi, n, tol);
    const std::map<std::string, CNum> bind = bindings(spec);

    Construction out{ExpPoly(n, tol), ExpPoly(n, tol), Poly(n, tol), Poly(n, tol)};
    switch (spec.theorem) {
    case Theorem::T1_i:
    case Theorem::T2_i: {
        const Leading lf = leading_factors(tc, spec.xi1, spec.xi2);
        for (CNum k : {lf.K1, lf.K2, lf.K1p, lf.K2p})
            if (std::abs(k) <= 1e-12)
                throw ZeroCoefficient("leading factor A1*xi + A2/xi (or A2*xi + A1/xi) vanishes");
        const Poly base = Poly::linear(spec.a, tol) + phi;
        out.g1 = base + cst(spec.d1);
        out.g2 = base + cst(spec.d2);
        if (spec.theorem == Theorem::T1_i) {
            out.f = ex(lf.K1 * kInvSqrt2, out.g1 * 0.5);
            out.g = ex(lf.K2 * kInvSqrt2, out.g2 * 0.5);
        } else {
            const CNum lc = bind.at("L(c)");
            out.f = ex(lf.K2p * kInvSqrt2, (base + cst(spec.d2 - lc)) * 0.5);
            out.g = ex(lf.K1p * kInvSqrt2, (base + cst(spec.d1 - lc)) * 0.5);
        }
        break;
    }
    case Theorem::T1_ii:
    case Theorem::T1_iii:
    case Theorem::T2_ii:
    case Theorem::T2_iii: {
        const Poly e1 = Poly::linear(spec.a, tol) + phi;
        const Poly e2 = Poly::linear(spec.b, tol) + psi;
        out.g1 = e1 + e2 + cst(spec.d1 + spec.d3);
        out.g2 = e1 + e2 + cst(spec.d2 + spec.d4);
        const CNum s = kInvSqrt2, A1 = tc.A1, A2 = tc.A2;
        const CNum l1 = is_t2(spec.theorem) ? bind.at("L1(c)") : CNum(0.0);
        const CNum l2 = is_t2(spec.theorem) ? bind.at("L2(c)") : CNum(0.0);
        auto E1 = [&](CNum d) { return e1 + cst(d - l1); };
        auto E2 = [&](CNum d) { return e2 + cst(d - l2); };
        switch (spec.theorem) {
        case Theorem::T1_ii:
            out.f = ex(A1 * s, E1(spec.d1)) + ex(A2 * s, E2(spec.d3));
            out.g = ex(A1 * s, E2(spec.d4)) + ex(A2 * s, E1(spec.d2));
            break;
        case Theorem::T1_iii:
            out.f = ex(A1 * s, E1(spec.d1)) + ex(A2 * s, E2(spec.d3));
            out.g = ex(A1 * s, E1(spec.d2)) + ex(A2 * s, E2(spec.d4));
            break;
        case Theorem::T2_ii:
            out.f = ex(A2 * s, E2(spec.d4)) + ex(A1 * s, E1(spec.d2));
            out.g = ex(A2 * s, E1(spec.d1)) + ex(A1 * s, E2(spec.d3));
            break;
        default: // T2_iii
            out.f = ex(A2 * s, E1(spec.d2)) + ex(A1 * s, E2(spec.d4));
            out.g = ex(A2 * s, E1(spec.d1)) + ex(A1 * s, E2(spec.d3));
            break;
        }
        break;
    }
    case Theorem::T3_i:
    case Theorem::T3_ii: {
        const Poly p = t3_exponent(spec, tol);
        const CNum t = cpow(spec.alpha, spec.k);
        // k-fold z1-derivative of e^{-P} brings (-alpha)^k, not alpha^k.
        const CNum tm = cpow(-spec.alpha, spec.k);
        const CNum s = kInvSqrt2, A1 = tc.A1, A2 = tc.A2;
        out.f = ex(A1 * s / t, p) + ex(A2 * s / tm, -p);
        if (spec.theorem == Theorem::T3_i)
            out.g = ex(A1 * s / t, p + cst(spec.eta)) + ex(A2 * s / tm, -(p + cst(spec.eta)));
        else
            out.g = ex(A1 * s / t, -p + cst(spec.eta)) + ex(A2 * s / t, p - cst(spec.eta));
        break;
    }
    }
    return out;
}

SystemKind system_for(const FamilySpec &spec, const Construction &built) {
    SystemKind kind;
    kind.type = system_type_of(spec.theorem);
    kind.n = spec.n;
    kind.c = spec.c;
    kind.k = spec.k;
    kind.g1 = built.g1;
    kind.g2 = built.g2;
    return kind;
}

std::map<std::string, CNum> bindings(const FamilySpec &spec) {
    std::map<std::string, CNum> b;
    b["d1"] = spec.d1;
    b["d2"] = spec.d2;
    b["d3"] = spec.d3;
    b["d4"] = spec.d4;
    b["eta"] = spec.eta;
    b["alpha^k"] = cpow(spec.alpha, spec.k);
    if (spec.a.size() == spec.c.size()) {
        b["L(c)"] = dot(spec.a, spec.c);
        b["L1(c)"] = b["L(c)"];
    }
    if (spec.b.size() == spec.c.size())
        b["L2(c)"] = dot(spec.b, spec.c);
    if (is_t3(spec.theorem) && spec.c.size() == 2) {
        CNum lc = spec.alpha * spec.c[0] + spec.beta * spec.c[1];
        if (spec.gamma_counted_twice)
            lc += spec.gamma;
        b["L(c)"] = lc;
    }
    return b;
}

std::vector<Constraint> constraint_set(const FamilySpec &spec) {
    const TrinomialConstants tc = make_constants(spec.w);
    const CNum A1 = tc.A1, A2 = tc.A2;
    const std::string tag =
        to_string(spec.theorem) +
        (spec.subcase == Subcase::None ? "" : "(" + to_string(spec.subcase) + ")") + ": ";
    auto sym = [](std::initializer_list<std::pair<std::string, CNum>> terms) {
        return LinearExpr{std::vector<std::pair<std::string, CNum>>(terms), 0.0};
    };
    std::vector<Constraint> out;

    switch (spec.theorem) {
    case Theorem::T1_i: {
        const Leading lf = leading_factors(tc, spec.xi1, spec.xi2);
        out.push_back(Constraint::exp_eq(sym({{"L(c)", 1.0}}),
                                         (lf.K2p * lf.K1p) / (lf.K1 * lf.K2),
                                         tag + "e^{L(c)} = (A2xi2+A1/xi2)(A2xi1+A1/xi1)/"
                                               "((A1xi1+A2/xi1)(A1xi2+A2/xi2))"));
        out.push_back(Constraint::exp_eq(sym({{"d1", 1.0}, {"d2", -1.0}}),
                                         (lf.K2p * lf.K2) / (lf.K1 * lf.K1p),
                                         tag + "e^{d1-d2} = (A2xi2+A1/xi2)(A1xi2+A2/xi2)/"
                                               "((A1xi1+A2/xi1)(A2xi1+A1/xi1))"));
        out.push_back(Constraint::exp_eq(sym({{"L(c)", 0.5}, {"d1", 0.5}, {"d2", -0.5}}),
                                         lf.K2p / lf.K1,
                                         tag + "e^{(L(c)+d1-d2)/2} = (A2xi2+A1/xi2)/(A1xi1+A2/xi1)"));
        break;
    }
    case Theorem::T2_i: {
        const Leading lf = leading_factors(tc, spec.xi1, spec.xi2);
        const CNum half = spec.a.empty() ? CNum(0.0) : spec.a[0] / 2.0;
        const CNum hk = cpow(half, spec.k);
        out.push_back(Constraint::exp_eq(sym({{"L(c)", 1.0}}),
                                         hk * hk * (lf.K2p * lf.K1p) / (lf.K1 * lf.K2),
                                         tag + "e^{L(c)} = (a1/2)^{2k} (A2xi2+A1/xi2)(A2xi1+A1/xi1)/"
                                               "((A1xi1+A2/xi1)(A1xi2+A2/xi2))"));
        out.push_back(Constraint::exp_eq(sym({{"L(c)", 0.5}, {"d1", 0.5}, {"d2", -0.5}}),
                                         hk * lf.K2p / lf.K1,
                                         tag + "e^{(L(c)+d1-d2)/2} = (a1/2)^k (A2xi2+A1/xi2)/"
                                               "(A1xi1+A2/xi1)"));
        break;
    }
    case Theorem::T1_ii:
    case Theorem::T1_iii:
    case Theorem::T2_ii:
    case Theorem::T2_iii: {
        const auto [s1, s2] = subcase_signs(spec.subcase);
        CNum t1 = s1, t2 = s2;
        std::string f1 = "", f2 = "";
        if (spec.theorem == Theorem::T1_iii || spec.theorem == Theorem::T2_iii) {
            t1 *= A2 / A1;
            t2 *= A1 / A2;
            f1 = "A2/A1";
            f2 = "A1/A2";
        }
        if (is_t2(spec.theorem)) {
            t1 *= cpow(spec.a.empty() ? CNum(0.0) : spec.a[0], spec.k);
            t2 *= cpow(spec.b.empty() ? CNum(0.0) : spec.b[0], spec.k);
            f1 += f1.empty() ? "a1^k" : "*a1^k";
            f2 += f2.empty() ? "b1^k" : "*b1^k";
        }
        auto sign = [](double s) { return s > 0 ? std::string("") : std::string("-"); };
        if (f1.empty())
            f1 = "1";
        if (f2.empty())
            f2 = "1";
        out.push_back(Constraint::exp_eq(sym({{"L1(c)", 1.0}}), t1,
                                         tag + "e^{L1(c)} = " + sign(s1) + f1));
        out.push_back(Constraint::exp_eq(sym({{"L2(c)", 1.0}}), t2,
                                         tag + "e^{L2(c)} = " + sign(s2) + f2));
        out.push_back(Constraint::exp_eq(sym({{"d1", 1.0}, {"d2", -1.0}}), s1,
                                         tag + "e^{d1-d2} = " + sign(s1) + "1"));
        out.push_back(Constraint::exp_eq(sym({{"d3", 1.0}, {"d4", -1.0}}), s2,
                                         tag + "e^{d3-d4} = " + sign(s2) + "1"));
        break;
    }
    case Theorem::T3_i: {
        const CNum t = cpow(spec.alpha, spec.k);
        const CNum e = std::exp(spec.eta);
        const double sigma = spec.k % 2 == 0 ? 1.0 : -1.0;
        out.push_back(Constraint::exp_eq(sym({{"L(c)", 1.0}}), A2 * e / (sigma * A1 * t + A2 * e),
                                         tag + "e^{L(c)} = A2e^eta/((-1)^k A1 alpha^k + A2e^eta)"));
        out.push_back(Constraint::exp_eq(sym({{"eta", 2.0}}), 1.0, tag + "e^{2eta} = 1"));
        out.push_back(Constraint::value_eq(sym({{"alpha^k", 1.0}}),
                                           -(sigma * A1 * A1 + A2 * A2) / (sigma * A1 * A2 * e),
                                           tag + "alpha^k = -((-1)^k A1^2 + A2^2)/"
                                                 "((-1)^k A1A2e^eta)"));
        break;
    }
    case Theorem::T3_ii: {
        const CNum t = cpow(spec.alpha, spec.k);
        const CNum e = std::exp(spec.eta);
        out.push_back(Constraint::exp_eq(sym({{"L(c)", 1.0}}), 1.0 + t / e,
                                         tag + "e^{L(c)} = 1 + e^{-eta} alpha^k"));
        out.push_back(Constraint::exp_eq(sym({{"eta", 2.0}}), 1.0, tag + "e^{2eta} = 1"));
        out.push_back(Constraint::value_eq(sym({{"alpha^k", 1.0}}), -2.0 * e,
                                           tag + "alpha^k = -2e^eta"));
        break;
    }
    }
    return out;
}

} // namespace fermat
