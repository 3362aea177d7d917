#include "fermat/trinomial.hpp"

#include "fermat/error.hpp"

#include <cmath>

namespace fermat {

namespace {

// Avoids landing on the lower side of the branch cut for values such as
// complex(-1, -0.0).
CNum principal_sqrt(CNum z) {
    if (z.imag() == 0.0)
        z = CNum(z.real(), 0.0);
    return std::sqrt(z);
}

} // namespace

TrinomialConstants make_constants(CNum w, double tol) {
    if (std::abs(w) <= tol || std::abs(w * w - 1.0) <= tol)
        throw DegenerateW("w^2 must differ from 0 and 1 (w = " + std::to_string(w.real()) + "+" +
                          std::to_string(w.imag()) + "i)");
    TrinomialConstants k;
    k.w = w;
    k.sqrt1pw = principal_sqrt(1.0 + w);
    k.sqrt1mw = principal_sqrt(1.0 - w);
    const CNum i(0.0, 1.0);
    k.A1 = 1.0 / (2.0 * k.sqrt1pw) + 1.0 / (2.0 * i * k.sqrt1mw);
    k.A2 = 1.0 / (2.0 * k.sqrt1pw) - 1.0 / (2.0 * i * k.sqrt1mw);
    return k;
}

ExpPoly q_form(const ExpPoly &x, const ExpPoly &y, CNum w) {
    return x * x + (2.0 * w) * (x * y) + y * y;
}

UV uv_transform(const ExpPoly &f, const ExpPoly &gshift) {
    const CNum inv = 1.0 / std::sqrt(2.0);
    return UV{(f + gshift) * inv, (f - gshift) * inv};
}

std::string to_string(SystemType t) {
    switch (t) {
    case SystemType::Difference:
        return "difference";
    case SystemType::PartialDiffDifference:
        return "partial-diff-difference";
    case SystemType::ShiftDifference:
        return "shift-difference";
    }
    return "unknown";
}

SystemType system_type_from_string(const std::string &s) {
    if (s == "difference")
        return SystemType::Difference;
    if (s == "partial-diff-difference")
        return SystemType::PartialDiffDifference;
    if (s == "shift-difference")
        return SystemType::ShiftDifference;
    throw InvalidCase("unknown system kind '" + s + "'");
}

void SystemKind::validate() const {
    if (n == 0)
        throw InvalidCase("dimension must be at least 1");
    if (type != SystemType::Difference && n != 2)
        throw InvalidCase(to_string(type) + " system is defined in C^2 only");
    if (k == 0)
        throw InvalidCase("derivative order k must be at least 1");
    if (c.size() != n)
        throw DimensionMismatch("shift vector has length " + std::to_string(c.size()) +
                                ", expected " + std::to_string(n));
    if (g1.dim() != n || g2.dim() != n)
        throw DimensionMismatch("right-side exponents must live in the system dimension");
}

ExpPoly apply_derivative_part(const SystemKind &kind, const ExpPoly &f) {
    if (kind.type == SystemType::Difference)
        return f;
    return f.partial_k(0, kind.k);
}

ExpPoly apply_shift_part(const SystemKind &kind, const ExpPoly &g) {
    ExpPoly shifted = g.shift(kind.c);
    if (kind.type == SystemType::ShiftDifference)
        return shifted - g;
    return shifted;
}

Residuals residuals(const SystemKind &kind, const ExpPoly &f, const ExpPoly &g, CNum w) {
    kind.validate();
    if (f.dim() != kind.n || g.dim() != kind.n)
        throw DimensionMismatch("f and g must live in the system dimension");
    const ExpPoly rhs1 = ExpPoly::exp_of(kind.g1.with_tol(f.tol()));
    const ExpPoly rhs2 = ExpPoly::exp_of(kind.g2.with_tol(f.tol()));
    return Residuals{
        q_form(apply_derivative_part(kind, f), apply_shift_part(kind, g), w) - rhs1,
        q_form(apply_derivative_part(kind, g), apply_shift_part(kind, f), w) - rhs2,
    };
}

} // namespace fermat
