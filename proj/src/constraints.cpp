#include "fermat/constraints.hpp"

#include "fermat/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace fermat {

CNum LinearExpr::eval(const std::map<std::string, CNum> &bindings) const {
    CNum sum = constant;
    for (const auto &[sym, coef] : terms) {
        auto it = bindings.find(sym);
        if (it == bindings.end())
            throw UnboundSymbol("symbol '" + sym + "' has no binding");
        sum += coef * it->second;
    }
    return sum;
}

std::string LinearExpr::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto &[sym, coef] : terms) {
        if (!first)
            os << " + ";
        first = false;
        if (coef != CNum(1.0))
            os << "(" << coef.real() << (coef.imag() < 0 ? "" : "+") << coef.imag() << "i)*";
        os << sym;
    }
    if (constant != CNum(0.0) || first) {
        if (!first)
            os << " + ";
        os << "(" << constant.real() << (constant.imag() < 0 ? "" : "+") << constant.imag()
           << "i)";
    }
    return os.str();
}

Constraint Constraint::exp_eq(LinearExpr lhs, CNum target, std::string label) {
    if (std::abs(target) == 0.0 || !std::isfinite(std::abs(target)))
        throw ZeroTarget("exp(...) = " + std::to_string(target.real()) + "+" +
                         std::to_string(target.imag()) + "i has no solution (" + label + ")");
    return Constraint{std::move(lhs), target, std::move(label), true};
}

Constraint Constraint::value_eq(LinearExpr lhs, CNum target, std::string label) {
    return Constraint{std::move(lhs), target, std::move(label), false};
}

CheckResult check(const Constraint &cst, const std::map<std::string, CNum> &bindings, double tol) {
    const CNum x = cst.lhs.eval(bindings);
    const CNum value = cst.exponential ? std::exp(x) : x;
    const double dev = std::abs(value - cst.target) / std::max(1.0, std::abs(cst.target));
    return CheckResult{dev <= tol, dev};
}

BranchSolution solve_exp(CNum target, long branch) {
    if (std::abs(target) == 0.0)
        throw ZeroTarget("exp(x) = 0 has no solution");
    const CNum principal = std::log(target);
    return BranchSolution{principal + CNum(0.0, 2.0 * std::numbers::pi * static_cast<double>(branch)),
                          branch};
}

CNum solve_linear_for_last(std::span<const CNum> coeffs, std::span<const CNum> values, CNum rhs) {
    if (coeffs.size() != values.size() || values.empty())
        throw DimensionMismatch("solve_linear_for_last: coefficient and value lists differ");
    const CNum pivot = values.back();
    if (std::abs(pivot) <= 1e-12)
        throw SingularSolve("pivot value is ~0; cannot solve for the last coefficient");
    CNum rest = 0.0;
    for (std::size_t j = 0; j + 1 < values.size(); ++j)
        rest += coeffs[j] * values[j];
    return (rhs - rest) / pivot;
}

} // namespace fermat
