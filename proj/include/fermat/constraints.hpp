#pragma once

#include "fermat/poly.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fermat {

inline constexpr double kDefaultConstraintTol = 1e-9;

/// constant + sum coeff * symbol over named parameters.
struct LinearExpr {
    std::vector<std::pair<std::string, CNum>> terms;
    CNum constant = 0.0;

    CNum eval(const std::map<std::string, CNum> &bindings) const;
    std::string to_string() const;
};

/// A relation between family parameters, either exp(lhs) = target or, for
/// relations such as alpha^k = target that are not exponential, lhs = target.
struct Constraint {
    LinearExpr lhs;
    CNum target;
    std::string label;
    bool exponential = true;

    /// Throws ZeroTarget for an exponential relation with target 0.
    static Constraint exp_eq(LinearExpr lhs, CNum target, std::string label);
    static Constraint value_eq(LinearExpr lhs, CNum target, std::string label);
};

struct CheckResult {
    bool pass = false;
    double deviation = 0.0;
};

/// deviation = |value(lhs) - target| / max(1, |target|), pass iff <= tol.
/// Throws UnboundSymbol when a symbol of lhs has no binding.
CheckResult check(const Constraint &cst, const std::map<std::string, CNum> &bindings,
                  double tol = kDefaultConstraintTol);

struct BranchSolution {
    CNum value;
    long branch = 0;
};

/// value = Log(target) + 2*pi*i*branch with the principal logarithm.
BranchSolution solve_exp(CNum target, long branch);

/// Solves sum_j coeffs[j]*values[j] == rhs for the last coefficient, given
/// every other coefficient (the trailing entry of `coeffs` is ignored).
/// Throws SingularSolve when values.back() is ~0.
CNum solve_linear_for_last(std::span<const CNum> coeffs, std::span<const CNum> values, CNum rhs);

} // namespace fermat
