#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace fermat {

using CNum = std::complex<double>;

/// Default relative zero tolerance for dropping coefficients.
inline constexpr double kDefaultZeroTol = 1e-9;

/// Exponent vector of a monomial z1^e1 * ... * zn^en.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t dim) : exps_(dim, 0) {}
    explicit Monomial(std::vector<unsigned> exps) : exps_(std::move(exps)) {}

    std::size_t dim() const noexcept { return exps_.size(); }
    unsigned operator[](std::size_t j) const { return exps_[j]; }
    unsigned &operator[](std::size_t j) { return exps_[j]; }
    unsigned degree() const noexcept;
    const std::vector<unsigned> &exponents() const noexcept { return exps_; }

    Monomial operator*(const Monomial &o) const;
    bool operator==(const Monomial &) const = default;

private:
    std::vector<unsigned> exps_;
};

/// Graded lexicographic order: higher total degree first, ties broken
/// lexicographically with z1 dominating.
struct GradedLex {
    bool operator()(const Monomial &a, const Monomial &b) const;
};

using ShiftVector = std::vector<CNum>;

/// Sparse multivariate polynomial over C in a fixed number of variables.
///
/// Values are immutable in spirit: every operation returns a new Poly. A
/// coefficient is dropped when |coeff| <= tol * max(1, scale), where scale is
/// the largest coefficient magnitude that took part in producing it. The
/// tolerance travels with the value; binary operations use the larger of the
/// two operand tolerances.
class Poly {
public:
    using TermMap = std::map<Monomial, CNum, GradedLex>;

    explicit Poly(std::size_t dim = 0, double tol = kDefaultZeroTol)
        : dim_(dim), tol_(tol) {}

    static Poly constant(std::size_t dim, CNum value, double tol = kDefaultZeroTol);
    /// The coordinate function z_{var+1} (variables are 0-based in the API).
    static Poly variable(std::size_t dim, std::size_t var, double tol = kDefaultZeroTol);
    /// Linear form sum_j coeffs[j] * z_j with no constant term.
    static Poly linear(std::span<const CNum> coeffs, double tol = kDefaultZeroTol);
    /// Builds from raw terms, merging duplicates and dropping near-zeros.
    static Poly from_terms(std::size_t dim, const std::vector<std::pair<Monomial, CNum>> &terms,
                           double tol = kDefaultZeroTol);

    std::size_t dim() const noexcept { return dim_; }
    double tol() const noexcept { return tol_; }
    Poly with_tol(double tol) const;

    const TermMap &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    CNum constant_term() const;
    CNum coeff(const Monomial &m) const;
    unsigned degree() const noexcept;
    double max_abs_coeff() const noexcept;
    /// True when no monomial involves any variable other than `var`.
    bool depends_only_on(std::size_t var) const noexcept;

    Poly operator+(const Poly &o) const;
    Poly operator-(const Poly &o) const;
    Poly operator-() const;
    Poly operator*(const Poly &o) const;
    Poly operator*(CNum s) const;
    Poly pow(unsigned e) const;

    /// q(z) = p(z + c), by binomial expansion of every monomial.
    Poly shift(std::span<const CNum> c) const;
    /// Formal partial derivative in variable `var` (0-based).
    Poly partial(std::size_t var) const;
    Poly without_constant() const;

    CNum eval(std::span<const CNum> point) const;

    /// Coefficient-wise equality within max(tol) * max(1, largest coefficient).
    bool approx_equal(const Poly &o) const;
    /// Deterministic total order on term maps, used to sort canonical forms.
    static int compare(const Poly &a, const Poly &b);

private:
    void normalize(double scale);

    std::size_t dim_;
    double tol_;
    TermMap terms_;
};

inline Poly operator*(CNum s, const Poly &p) { return p * s; }

Poly poly_add(const Poly &a, const Poly &b);
Poly poly_mul(const Poly &a, const Poly &b);
Poly poly_shift(const Poly &p, std::span<const CNum> c);
/// `var` is 1-based here, matching the mathematical z_j naming.
Poly poly_partial(const Poly &p, std::size_t var);
CNum poly_eval(const Poly &p, std::span<const CNum> point);

} // namespace fermat
