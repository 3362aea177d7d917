#include "fermat/poly.hpp"

#include "fermat/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace fermat {

namespace {

void require_same_dim(const Poly &a, const Poly &b, const char *op) {
    if (a.dim() != b.dim())
        throw DimensionMismatch(std::string(op) + ": dimensions " + std::to_string(a.dim()) +
                                " and " + std::to_string(b.dim()));
}

CNum ipow(CNum base, unsigned e) {
    CNum r = 1.0;
    while (e > 0) {
        if (e & 1u)
            r *= base;
        e >>= 1u;
        if (e > 0)
            base *= base;
    }
    return r;
}

double binomial(unsigned n, unsigned k) {
    double r = 1.0;
    for (unsigned i = 1; i <= k; ++i)
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

} // namespace

unsigned Monomial::degree() const noexcept {
    return std::accumulate(exps_.begin(), exps_.end(), 0u);
}

Monomial Monomial::operator*(const Monomial &o) const {
    Monomial r(*this);
    for (std::size_t j = 0; j < exps_.size(); ++j)
        r.exps_[j] += o.exps_[j];
    return r;
}

bool GradedLex::operator()(const Monomial &a, const Monomial &b) const {
    const unsigned da = a.degree(), db = b.degree();
    if (da != db)
        return da > db;
    return a.exponents() > b.exponents();
}

Poly Poly::constant(std::size_t dim, CNum value, double tol) {
    return from_terms(dim, {{Monomial(dim), value}}, tol);
}

Poly Poly::variable(std::size_t dim, std::size_t var, double tol) {
    if (var >= dim)
        throw IndexOutOfRange("variable index " + std::to_string(var + 1) + " exceeds dimension " +
                              std::to_string(dim));
    Monomial m(dim);
    m[var] = 1;
    return from_terms(dim, {{m, CNum(1.0)}}, tol);
}

Poly Poly::linear(std::span<const CNum> coeffs, double tol) {
    const std::size_t dim = coeffs.size();
    std::vector<std::pair<Monomial, CNum>> terms;
    for (std::size_t j = 0; j < dim; ++j) {
        Monomial m(dim);
        m[j] = 1;
        terms.emplace_back(m, coeffs[j]);
    }
    return from_terms(dim, terms, tol);
}

Poly Poly::from_terms(std::size_t dim, const std::vector<std::pair<Monomial, CNum>> &terms,
                      double tol) {
    Poly p(dim, tol);
    double scale = 0.0;
    for (const auto &[m, c] : terms) {
        if (m.dim() != dim)
            throw DimensionMismatch("monomial of dimension " + std::to_string(m.dim()) +
                                    " in polynomial of dimension " + std::to_string(dim));
        p.terms_[m] += c;
        scale = std::max(scale, std::abs(c));
    }
    p.normalize(scale);
    return p;
}

Poly Poly::with_tol(double tol) const {
    Poly p(*this);
    p.tol_ = tol;
    return p;
}

void Poly::normalize(double scale) {
    const double cutoff = tol_ * std::max(1.0, scale);
    for (auto it = terms_.begin(); it != terms_.end();) {
        const CNum c = it->second;
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw OverflowGuard("non-finite polynomial coefficient");
        if (std::abs(c) <= cutoff)
            it = terms_.erase(it);
        else
            ++it;
    }
}

bool Poly::is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
}

CNum Poly::constant_term() const { return coeff(Monomial(dim_)); }

CNum Poly::coeff(const Monomial &m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? CNum(0.0) : it->second;
}

unsigned Poly::degree() const noexcept {
    // GradedLex puts the highest total degree first.
    return terms_.empty() ? 0u : terms_.begin()->first.degree();
}

double Poly::max_abs_coeff() const noexcept {
    double m = 0.0;
    for (const auto &[mono, c] : terms_)
        m = std::max(m, std::abs(c));
    return m;
}

bool Poly::depends_only_on(std::size_t var) const noexcept {
    for (const auto &[mono, c] : terms_)
        for (std::size_t j = 0; j < dim_; ++j)
            if (j != var && mono[j] != 0)
                return false;
    return true;
}

Poly Poly::operator+(const Poly &o) const {
    require_same_dim(*this, o, "poly_add");
    Poly r(dim_, std::max(tol_, o.tol_));
    r.terms_ = terms_;
    for (const auto &[m, c] : o.terms_)
        r.terms_[m] += c;
    r.normalize(std::max(max_abs_coeff(), o.max_abs_coeff()));
    return r;
}

Poly Poly::operator-() const {
    Poly r(*this);
    for (auto &[m, c] : r.terms_)
        c = -c;
    return r;
}

Poly Poly::operator-(const Poly &o) const { return *this + (-o); }

Poly Poly::operator*(const Poly &o) const {
    require_same_dim(*this, o, "poly_mul");
    Poly r(dim_, std::max(tol_, o.tol_));
    double scale = 0.0;
    for (const auto &[ma, ca] : terms_)
        for (const auto &[mb, cb] : o.terms_) {
            const CNum prod = ca * cb;
            r.terms_[ma * mb] += prod;
            scale = std::max(scale, std::abs(prod));
        }
    r.normalize(scale);
    return r;
}

Poly Poly::operator*(CNum s) const {
    Poly r(dim_, tol_);
    for (const auto &[m, c] : terms_)
        r.terms_[m] = c * s;
    r.normalize(max_abs_coeff() * std::abs(s));
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly result = Poly::constant(dim_, 1.0, tol_);
    Poly base = *this;
    while (e > 0) {
        if (e & 1u)
            result = result * base;
        e >>= 1u;
        if (e > 0)
            base = base * base;
    }
    return result;
}

Poly Poly::shift(std::span<const CNum> c) const {
    if (c.size() != dim_)
        throw DimensionMismatch("poly_shift: shift of length " + std::to_string(c.size()) +
                                " for polynomial of dimension " + std::to_string(dim_));
    Poly r(dim_, tol_);
    double scale = 0.0;
    std::vector<std::pair<Monomial, CNum>> partial, next;
    for (const auto &[mono, coef] : terms_) {
        partial.assign(1, {Monomial(dim_), coef});
        for (std::size_t j = 0; j < dim_; ++j) {
            const unsigned e = mono[j];
            if (e == 0)
                continue;
            next.clear();
            for (const auto &[pm, pc] : partial) {
                for (unsigned kk = 0; kk <= e; ++kk) {
                    Monomial nm = pm;
                    nm[j] = kk;
                    next.emplace_back(nm, pc * binomial(e, kk) *
                                              ipow(c[j], e - kk));
                }
            }
            partial.swap(next);
        }
        for (const auto &[pm, pc] : partial) {
            r.terms_[pm] += pc;
            scale = std::max(scale, std::abs(pc));
        }
    }
    r.normalize(scale);
    return r;
}

Poly Poly::partial(std::size_t var) const {
    if (var >= dim_)
        throw IndexOutOfRange("partial derivative in variable " + std::to_string(var + 1) +
                              " of a polynomial in " + std::to_string(dim_) + " variables");
    Poly r(dim_, tol_);
    for (const auto &[mono, c] : terms_) {
        if (mono[var] == 0)
            continue;
        Monomial m = mono;
        m[var] -= 1;
        r.terms_[m] += c * static_cast<double>(mono[var]);
    }
    r.normalize(max_abs_coeff());
    return r;
}

Poly Poly::without_constant() const {
    Poly r(*this);
    r.terms_.erase(Monomial(dim_));
    return r;
}

CNum Poly::eval(std::span<const CNum> point) const {
    if (point.size() != dim_)
        throw DimensionMismatch("poly_eval: point of length " + std::to_string(point.size()) +
                                " for polynomial of dimension " + std::to_string(dim_));
    const unsigned maxdeg = degree();
    // powers[j][e] = point[j]^e
    std::vector<std::vector<CNum>> powers(dim_, std::vector<CNum>(maxdeg + 1, CNum(1.0)));
    for (std::size_t j = 0; j < dim_; ++j)
        for (unsigned e = 1; e <= maxdeg; ++e)
            powers[j][e] = powers[j][e - 1] * point[j];
    CNum sum = 0.0;
    for (const auto &[mono, c] : terms_) {
        CNum t = c;
        for (std::size_t j = 0; j < dim_; ++j)
            if (mono[j] != 0)
                t *= powers[j][mono[j]];
        sum += t;
    }
    return sum;
}

bool Poly::approx_equal(const Poly &o) const {
    if (dim_ != o.dim_)
        return false;
    const double cutoff =
        std::max(tol_, o.tol_) * std::max({1.0, max_abs_coeff(), o.max_abs_coeff()});
    auto ia = terms_.begin();
    auto ib = o.terms_.begin();
    GradedLex less;
    while (ia != terms_.end() || ib != o.terms_.end()) {
        if (ib == o.terms_.end() || (ia != terms_.end() && less(ia->first, ib->first))) {
            if (std::abs(ia->second) > cutoff)
                return false;
            ++ia;
        } else if (ia == terms_.end() || less(ib->first, ia->first)) {
            if (std::abs(ib->second) > cutoff)
                return false;
            ++ib;
        } else {
            if (std::abs(ia->second - ib->second) > cutoff)
                return false;
            ++ia;
            ++ib;
        }
    }
    return true;
}

int Poly::compare(const Poly &a, const Poly &b) {
    GradedLex less;
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
        if (less(ia->first, ib->first))
            return -1;
        if (less(ib->first, ia->first))
            return 1;
        const CNum x = ia->second, y = ib->second;
        if (x.real() != y.real())
            return x.real() < y.real() ? -1 : 1;
        if (x.imag() != y.imag())
            return x.imag() < y.imag() ? -1 : 1;
    }
    if (ia == a.terms_.end() && ib == b.terms_.end())
        return 0;
    return ia == a.terms_.end() ? -1 : 1;
}

Poly poly_add(const Poly &a, const Poly &b) { return a + b; }
Poly poly_mul(const Poly &a, const Poly &b) { return a * b; }
Poly poly_shift(const Poly &p, std::span<const CNum> c) { return p.shift(c); }

Poly poly_partial(const Poly &p, std::size_t var) {
    if (var == 0 || var > p.dim())
        throw IndexOutOfRange("partial derivative index " + std::to_string(var) +
                              " outside 1.." + std::to_string(p.dim()));
    return p.partial(var - 1);
}

CNum poly_eval(const Poly &p, std::span<const CNum> point) { return p.eval(point); }

} // namespace fermat
