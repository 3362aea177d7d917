#pragma once

#include "fermat/exppoly.hpp"

#include <string>
#include <utility>

namespace fermat {

/// w together with the derived constants A1, A2 of the quadratic trinomial
/// x^2 + 2wxy + y^2. Both square roots use the principal branch.
struct TrinomialConstants {
    CNum w;
    CNum A1;
    CNum A2;
    CNum sqrt1pw; ///< principal sqrt(1 + w)
    CNum sqrt1mw; ///< principal sqrt(1 - w)
};

/// Throws DegenerateW when w^2 is 0 or 1 within `tol`.
TrinomialConstants make_constants(CNum w, double tol = 1e-12);

/// Q_w(x, y) = x^2 + 2w x y + y^2.
ExpPoly q_form(const ExpPoly &x, const ExpPoly &y, CNum w);

struct UV {
    ExpPoly u;
    ExpPoly v;
};

/// u = (f + gshift)/sqrt(2), v = (f - gshift)/sqrt(2), so that
/// Q_w(f, gshift) = (1+w) u^2 + (1-w) v^2.
UV uv_transform(const ExpPoly &f, const ExpPoly &gshift);

/// The three trinomial systems. Difference: D = id, S = shift by c.
/// PartialDiffDifference: D = d^k/dz1^k, S = shift by c.
/// ShiftDifference: D = d^k/dz1^k, S = shift by c minus identity, right sides 1.
enum class SystemType { Difference, PartialDiffDifference, ShiftDifference };

std::string to_string(SystemType t);
SystemType system_type_from_string(const std::string &s);

struct SystemKind {
    SystemType type = SystemType::Difference;
    std::size_t n = 2;
    ShiftVector c;
    unsigned k = 1;
    Poly g1; ///< right side of the first equation is exp(g1)
    Poly g2;

    /// Throws InvalidCase when dimension or order constraints are violated.
    void validate() const;
};

struct Residuals {
    ExpPoly r1;
    ExpPoly r2;
};

/// r1 = Q_w(D f, S g) - e^{g1}, r2 = Q_w(D g, S f) - e^{g2}.
Residuals residuals(const SystemKind &kind, const ExpPoly &f, const ExpPoly &g, CNum w);

/// D and S applied to a single function, exposed for numeric cross-checks.
ExpPoly apply_derivative_part(const SystemKind &kind, const ExpPoly &f);
ExpPoly apply_shift_part(const SystemKind &kind, const ExpPoly &g);

} // namespace fermat
