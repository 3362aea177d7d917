#include "fermat/exppoly.hpp"

#include "fermat/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fermat {

namespace {

// Keeps |coeff| * e^{log_scale} representable when folding the tag.
constexpr double kSafeLog = 690.0;

void require_same_dim(std::size_t a, std::size_t b, const char *op) {
    if (a != b)
        throw DimensionMismatch(std::string(op) + ": dimensions " + std::to_string(a) + " and " +
                                std::to_string(b));
}

/// Folds a nonzero log-scale tag into the coefficient when the result stays finite.
void settle(ExpTerm &t) {
    if (t.log_scale == 0.0)
        return;
    const double m = t.coeff.max_abs_coeff();
    if (std::abs(t.log_scale) > kFoldLimit)
        return;
    if (m > 0.0) {
        const double total = std::log(m) + t.log_scale;
        if (total > kSafeLog || total < -kSafeLog)
            return;
    }
    t.coeff = t.coeff * CNum(std::exp(t.log_scale));
    t.log_scale = 0.0;
}

/// Moves the constant part of the exponent into the coefficient.
void fold_constant(ExpTerm &t) {
    const CNum k = t.expo.constant_term();
    if (k == CNum(0.0))
        return;
    t.expo = t.expo.without_constant();
    t.coeff = t.coeff * std::polar(1.0, k.imag());
    t.log_scale += k.real();
}

/// Pulls a large coefficient magnitude into the tag so products cannot overflow.
void lift_scale(ExpTerm &t) {
    const double m = t.coeff.max_abs_coeff();
    if (m > 1e100 || (m > 0.0 && m < 1e-100)) {
        t.coeff = t.coeff * CNum(1.0 / m);
        t.log_scale += std::log(m);
    }
}

} // namespace

ExpPoly ExpPoly::from_terms(std::size_t dim, std::vector<ExpTerm> raw, double tol) {
    ExpPoly out(dim, tol);
    for (auto &t : raw) {
        require_same_dim(t.coeff.dim(), dim, "ep_canonicalize");
        require_same_dim(t.expo.dim(), dim, "ep_canonicalize");
        out.tol_ = std::max({out.tol_, t.coeff.tol(), t.expo.tol()});
        fold_constant(t);
    }

    // Group terms whose exponent polynomials agree within tolerance.
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i].coeff.is_zero())
            continue;
        bool placed = false;
        for (auto &g : groups) {
            if (raw[g.front()].expo.approx_equal(raw[i].expo)) {
                g.push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed)
            groups.push_back({i});
    }

    for (const auto &g : groups) {
        double top = raw[g.front()].log_scale;
        for (std::size_t i : g)
            top = std::max(top, raw[i].log_scale);
        std::vector<std::pair<Monomial, CNum>> contributions;
        for (std::size_t i : g) {
            const double factor = std::exp(raw[i].log_scale - top);
            for (const auto &[m, c] : raw[i].coeff.terms())
                contributions.emplace_back(m, c * factor);
        }
        ExpTerm merged{Poly::from_terms(dim, contributions, out.tol_),
                       raw[g.front()].expo.with_tol(out.tol_), top};
        if (merged.coeff.is_zero())
            continue;
        settle(merged);
        out.terms_.push_back(std::move(merged));
    }

    std::sort(out.terms_.begin(), out.terms_.end(), [](const ExpTerm &a, const ExpTerm &b) {
        return Poly::compare(a.expo, b.expo) < 0;
    });
    return out;
}

ExpPoly ExpPoly::from_poly(const Poly &p) {
    return from_terms(p.dim(), {ExpTerm{p, Poly(p.dim(), p.tol()), 0.0}}, p.tol());
}

ExpPoly ExpPoly::constant(std::size_t dim, CNum c, double tol) {
    return from_poly(Poly::constant(dim, c, tol));
}

ExpPoly ExpPoly::exp_term(const Poly &coeff, const Poly &expo) {
    require_same_dim(coeff.dim(), expo.dim(), "exp_term");
    return from_terms(coeff.dim(), {ExpTerm{coeff, expo, 0.0}}, std::max(coeff.tol(), expo.tol()));
}

ExpPoly ExpPoly::exp_of(const Poly &expo) {
    return exp_term(Poly::constant(expo.dim(), 1.0, expo.tol()), expo);
}

bool ExpPoly::is_polynomial() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.front().expo.is_zero());
}

Poly ExpPoly::as_poly() const {
    if (!is_polynomial())
        throw NonPolynomialExponent("expression is not a polynomial");
    if (terms_.empty())
        return Poly(dim_, tol_);
    const ExpTerm &t = terms_.front();
    if (t.log_scale == 0.0)
        return t.coeff;
    return t.coeff * CNum(std::exp(t.log_scale));
}

ExpPoly ExpPoly::operator+(const ExpPoly &o) const {
    require_same_dim(dim_, o.dim_, "ep_add");
    std::vector<ExpTerm> raw = terms_;
    raw.insert(raw.end(), o.terms_.begin(), o.terms_.end());
    return from_terms(dim_, std::move(raw), std::max(tol_, o.tol_));
}

ExpPoly ExpPoly::operator-() const {
    ExpPoly r(*this);
    for (auto &t : r.terms_)
        t.coeff = -t.coeff;
    return r;
}

ExpPoly ExpPoly::operator-(const ExpPoly &o) const { return *this + (-o); }

ExpPoly ExpPoly::operator*(const ExpPoly &o) const {
    require_same_dim(dim_, o.dim_, "ep_mul");
    std::vector<ExpTerm> raw;
    raw.reserve(terms_.size() * o.terms_.size());
    for (ExpTerm a : terms_) {
        lift_scale(a);
        for (ExpTerm b : o.terms_) {
            lift_scale(b);
            raw.push_back(ExpTerm{a.coeff * b.coeff, a.expo + b.expo, a.log_scale + b.log_scale});
        }
    }
    return from_terms(dim_, std::move(raw), std::max(tol_, o.tol_));
}

ExpPoly ExpPoly::operator*(CNum s) const {
    std::vector<ExpTerm> raw = terms_;
    for (auto &t : raw)
        t.coeff = t.coeff * s;
    return from_terms(dim_, std::move(raw), tol_);
}

ExpPoly ExpPoly::pow(unsigned e) const {
    ExpPoly result = ExpPoly::constant(dim_, 1.0, tol_);
    ExpPoly base = *this;
    while (e > 0) {
        if (e & 1u)
            result = result * base;
        e >>= 1u;
        if (e > 0)
            base = base * base;
    }
    return result;
}

ExpPoly ExpPoly::shift(std::span<const CNum> c) const {
    if (c.size() != dim_)
        throw DimensionMismatch("ep_shift: shift of length " + std::to_string(c.size()) +
                                " for dimension " + std::to_string(dim_));
    std::vector<ExpTerm> raw;
    raw.reserve(terms_.size());
    for (const auto &t : terms_)
        raw.push_back(ExpTerm{t.coeff.shift(c), t.expo.shift(c), t.log_scale});
    return from_terms(dim_, std::move(raw), tol_);
}

ExpPoly ExpPoly::partial_k(std::size_t var, unsigned k) const {
    if (var >= dim_)
        throw IndexOutOfRange("derivative in variable " + std::to_string(var + 1) + " of " +
                              std::to_string(dim_) + " variables");
    if (k == 0)
        throw InvalidOrder("derivative order must be at least 1");
    ExpPoly cur = *this;
    for (unsigned round = 0; round < k; ++round) {
        // d/dz (c e^P) = (dc + c dP) e^P
        std::vector<ExpTerm> raw;
        raw.reserve(cur.terms_.size());
        for (const auto &t : cur.terms_)
            raw.push_back(
                ExpTerm{t.coeff.partial(var) + t.coeff * t.expo.partial(var), t.expo, t.log_scale});
        cur = from_terms(dim_, std::move(raw), tol_);
    }
    return cur;
}

CNum ExpPoly::eval(std::span<const CNum> point) const {
    if (point.size() != dim_)
        throw DimensionMismatch("ep_eval: point of length " + std::to_string(point.size()) +
                                " for dimension " + std::to_string(dim_));
    CNum sum = 0.0;
    for (const auto &t : terms_) {
        const CNum e = t.expo.eval(point) + t.log_scale;
        if (e.real() > kFoldLimit)
            throw OverflowGuard("exponent real part " + std::to_string(e.real()) +
                                " exceeds overflow guard");
        sum += t.coeff.eval(point) * std::exp(e);
    }
    return sum;
}

double ExpPoly::magnitude(std::span<const CNum> point) const {
    double sum = 0.0;
    for (const auto &t : terms_) {
        const CNum e = t.expo.eval(point) + t.log_scale;
        if (e.real() > kFoldLimit)
            throw OverflowGuard("exponent real part " + std::to_string(e.real()) +
                                " exceeds overflow guard");
        sum += std::abs(t.coeff.eval(point)) * std::exp(e.real());
    }
    return sum;
}

bool ExpPoly::approx_equal(const ExpPoly &o) const {
    if (dim_ != o.dim_ || terms_.size() != o.terms_.size())
        return false;
    std::vector<bool> used(o.terms_.size(), false);
    for (const auto &a : terms_) {
        bool found = false;
        for (std::size_t j = 0; j < o.terms_.size(); ++j) {
            if (used[j] || !a.expo.approx_equal(o.terms_[j].expo))
                continue;
            const auto &b = o.terms_[j];
            const double top = std::max(a.log_scale, b.log_scale);
            const Poly ca = a.coeff * CNum(std::exp(a.log_scale - top));
            const Poly cb = b.coeff * CNum(std::exp(b.log_scale - top));
            if (!ca.approx_equal(cb))
                return false;
            used[j] = true;
            found = true;
            break;
        }
        if (!found)
            return false;
    }
    return true;
}

ExpPoly ep_canonicalize(std::size_t dim, std::vector<ExpTerm> raw, double tol) {
    return ExpPoly::from_terms(dim, std::move(raw), tol);
}
ExpPoly ep_add(const ExpPoly &a, const ExpPoly &b) { return a + b; }
ExpPoly ep_mul(const ExpPoly &a, const ExpPoly &b) { return a * b; }
ExpPoly ep_shift(const ExpPoly &e, std::span<const CNum> c) { return e.shift(c); }

ExpPoly ep_partial_k(const ExpPoly &e, std::size_t var, unsigned k) {
    if (var == 0 || var > e.dim())
        throw IndexOutOfRange("derivative index " + std::to_string(var) + " outside 1.." +
                              std::to_string(e.dim()));
    return e.partial_k(var - 1, k);
}

CNum ep_eval(const ExpPoly &e, std::span<const CNum> point) { return e.eval(point); }
bool ep_is_zero(const ExpPoly &e) { return e.is_zero(); }

} // namespace fermat
