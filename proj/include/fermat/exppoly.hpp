#pragma once

#include "fermat/poly.hpp"

#include <vector>

namespace fermat {

/// Real parts of folded exponent constants beyond this bound stay in a
/// separate log-scale tag instead of being multiplied into the coefficient.
inline constexpr double kFoldLimit = 700.0;

/// One summand coeff(z) * exp(log_scale) * exp(expo(z)).
///
/// In canonical form `expo` has no constant term and `log_scale` is zero
/// unless folding the constant would overflow a double.
struct ExpTerm {
    Poly coeff;
    Poly expo;
    double log_scale = 0.0;
};

/// Finite sum of polynomial-coefficient exponential terms.
///
/// Canonical form has pairwise distinct exponent polynomials and no zero
/// coefficients. For such a sum, vanishing identically forces every
/// coefficient to vanish (exponent differences are non-constant
/// polynomials, which is the hypothesis of the Borel-type independence
/// lemma), so the zero test reduces to an empty term list.
class ExpPoly {
public:
    explicit ExpPoly(std::size_t dim = 0, double tol = kDefaultZeroTol) : dim_(dim), tol_(tol) {}

    /// Canonicalizes an arbitrary list of terms sharing `dim`.
    static ExpPoly from_terms(std::size_t dim, std::vector<ExpTerm> raw,
                              double tol = kDefaultZeroTol);
    static ExpPoly from_poly(const Poly &p);
    static ExpPoly constant(std::size_t dim, CNum c, double tol = kDefaultZeroTol);
    /// coeff * exp(expo)
    static ExpPoly exp_term(const Poly &coeff, const Poly &expo);
    static ExpPoly exp_of(const Poly &expo);

    std::size_t dim() const noexcept { return dim_; }
    double tol() const noexcept { return tol_; }
    const std::vector<ExpTerm> &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// True when the value is a plain polynomial (one term with zero exponent, or zero).
    bool is_polynomial() const noexcept;
    /// The polynomial value; throws NonPolynomialExponent unless is_polynomial().
    Poly as_poly() const;

    ExpPoly operator+(const ExpPoly &o) const;
    ExpPoly operator-(const ExpPoly &o) const;
    ExpPoly operator-() const;
    ExpPoly operator*(const ExpPoly &o) const;
    ExpPoly operator*(CNum s) const;
    ExpPoly pow(unsigned e) const;

    ExpPoly shift(std::span<const CNum> c) const;
    /// k-fold partial derivative in variable `var` (0-based).
    ExpPoly partial_k(std::size_t var, unsigned k) const;

    /// Sum of coeff(x) * exp(expo(x) + log_scale). Throws OverflowGuard when an
    /// exponent has real part above kFoldLimit.
    CNum eval(std::span<const CNum> point) const;
    /// Sum of |term(x)|, the natural magnitude against which eval is judged.
    double magnitude(std::span<const CNum> point) const;

    /// Canonical equality: same exponents, coefficients equal within tolerance.
    bool approx_equal(const ExpPoly &o) const;

private:
    std::size_t dim_;
    double tol_;
    std::vector<ExpTerm> terms_;
};

inline ExpPoly operator*(CNum s, const ExpPoly &e) { return e * s; }

ExpPoly ep_canonicalize(std::size_t dim, std::vector<ExpTerm> raw, double tol = kDefaultZeroTol);
ExpPoly ep_add(const ExpPoly &a, const ExpPoly &b);
ExpPoly ep_mul(const ExpPoly &a, const ExpPoly &b);
ExpPoly ep_shift(const ExpPoly &e, std::span<const CNum> c);
/// `var` is 1-based, `k` >= 1.
ExpPoly ep_partial_k(const ExpPoly &e, std::size_t var, unsigned k);
CNum ep_eval(const ExpPoly &e, std::span<const CNum> point);
bool ep_is_zero(const ExpPoly &e);

} // namespace fermat
