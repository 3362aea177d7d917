#include "fermat/parser.hpp"

#include "fermat/error.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace fermat {

namespace {

enum class Tok { Num, Imag, Ident, Var, Op, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    double num = 0.0;
    std::size_t var = 0;
    std::size_t line = 1, col = 1;
};

std::vector<Token> lex(const std::string &s) {
    std::vector<Token> out;
    std::size_t i = 0, line = 1, col = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < s.size()) {
        const char ch = s[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            advance(1);
            continue;
        }
        Token t{Tok::End, "", 0.0, 0, line, col};
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
            std::size_t j = i;
            while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.'))
                ++j;
            // exponent only when digits follow, so "2e" stays 2 * e
            if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < s.size() && (s[k] == '+' || s[k] == '-'))
                    ++k;
                if (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
                    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k])))
                        ++k;
                    j = k;
                }
            }
            t.text = s.substr(i, j - i);
            char *end = nullptr;
            t.num = std::strtod(t.text.c_str(), &end);
            if (end != t.text.c_str() + t.text.size())
                throw SyntaxError("malformed number '" + t.text + "'", line, col);
            t.kind = Tok::Num;
            advance(j - i);
            // "2i" and "0.5i" are imaginary literals
            if (i < s.size() && s[i] == 'i' &&
                (i + 1 >= s.size() || !std::isalnum(static_cast<unsigned char>(s[i + 1])))) {
                t.kind = Tok::Imag;
                t.text += "i";
                advance(1);
            }
            out.push_back(t);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            t.text = s.substr(i, j - i);
            t.kind = Tok::Ident;
            if (t.text.size() > 1 && t.text[0] == 'z' &&
                t.text.find_first_not_of("0123456789", 1) == std::string::npos) {
                t.kind = Tok::Var;
                t.var = std::stoul(t.text.substr(1));
                if (t.var == 0)
                    throw SyntaxError("variables are numbered from z1", line, col);
            }
            advance(j - i);
            out.push_back(t);
            continue;
        }
        switch (ch) {
        case '+':
        case '-':
        case '*':
        case '/':
        case '^':
            t.kind = Tok::Op;
            break;
        case '(':
            t.kind = Tok::LParen;
            break;
        case ')':
            t.kind = Tok::RParen;
            break;
        default:
            throw SyntaxError(std::string("unexpected character '") + ch + "'", line, col);
        }
        t.text = std::string(1, ch);
        advance(1);
        out.push_back(t);
    }
    out.push_back(Token{Tok::End, "", 0.0, 0, line, col});
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> toks, std::size_t dim, double tol)
        : toks_(std::move(toks)), dim_(dim), tol_(tol) {}

    ExpPoly parse() {
        ExpPoly e = expr();
        if (peek().kind != Tok::End)
            fail("unexpected '" + peek().text + "'");
        return e;
    }

private:
    const Token &peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_++]; }
    bool accept_op(char op) {
        if (peek().kind == Tok::Op && peek().text[0] == op) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string &msg) const { fail_at(msg, peek()); }
    [[noreturn]] static void fail_at(const std::string &msg, const Token &t) {
        throw SyntaxError(msg, t.line, t.col);
    }

    ExpPoly constant(CNum v) const { return ExpPoly::constant(dim_, v, tol_); }

    static bool as_constant(const ExpPoly &e, CNum &out) {
        if (!e.is_polynomial())
            return false;
        const Poly p = e.as_poly();
        if (!p.is_constant())
            return false;
        out = p.constant_term();
        return true;
    }

    /// 1/e for a single term with constant coefficient.
    ExpPoly reciprocal(const ExpPoly &e, const Token &at) const {
        if (e.terms().size() != 1 || !e.terms().front().coeff.is_constant())
            fail_at("division by a non-monomial expression", at);
        const ExpTerm &t = e.terms().front();
        const CNum c = t.coeff.constant_term();
        if (c == CNum(0.0))
            fail_at("division by zero", at);
        return ExpPoly::from_terms(dim_, {ExpTerm{Poly::constant(dim_, 1.0 / c, tol_), -t.expo,
                                                  -t.log_scale}},
                                   tol_);
    }

    ExpPoly expr() {
        ExpPoly acc = term();
        for (;;) {
            if (accept_op('+'))
                acc = acc + term();
            else if (accept_op('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    ExpPoly term() {
        ExpPoly acc = unary();
        for (;;) {
            if (accept_op('*')) {
                acc = acc * unary();
            } else if (peek().kind == Tok::Op && peek().text == "/") {
                const Token at = next();
                acc = acc * reciprocal(unary(), at);
            } else {
                return acc;
            }
        }
    }

    ExpPoly unary() {
        if (accept_op('-'))
            return -unary();
        if (accept_op('+'))
            return unary();
        return power();
    }

    ExpPoly power() {
        ExpPoly base = primary();
        if (peek().kind != Tok::Op || peek().text != "^")
            return base;
        const Token at = next();
        CNum e;
        if (!as_constant(unary(), e) || e.imag() != 0.0 || e.real() != std::round(e.real()) ||
            std::abs(e.real()) > 1e6)
            fail_at("exponent must be an integer constant", at);
        const long n = static_cast<long>(e.real());
        if (n >= 0)
            return base.pow(static_cast<unsigned>(n));
        return reciprocal(base, at).pow(static_cast<unsigned>(-n));
    }

    ExpPoly primary() {
        const Token t = next();
        switch (t.kind) {
        case Tok::Num:
            return constant(t.num);
        case Tok::Imag:
            return constant(CNum(0.0, t.num));
        case Tok::Var:
            if (t.var > dim_)
                throw IndexOutOfRange("variable " + t.text + " exceeds dimension " +
                                      std::to_string(dim_));
            return ExpPoly::from_poly(Poly::variable(dim_, t.var - 1, tol_));
        case Tok::LParen: {
            ExpPoly e = expr();
            if (next().kind != Tok::RParen)
                fail_at("expected ')'", toks_[pos_ - 1]);
            return e;
        }
        case Tok::Ident:
            return ident(t);
        case Tok::End:
            fail_at("unexpected end of input", t);
        default:
            fail_at("unexpected '" + t.text + "'", t);
        }
    }

    ExpPoly ident(const Token &t) {
        if (t.text == "i")
            return constant(CNum(0.0, 1.0));
        if (t.text == "pi")
            return constant(std::numbers::pi);
        if (t.text == "e")
            return constant(std::numbers::e);
        if (t.text != "exp" && t.text != "sqrt")
            fail_at("unknown identifier '" + t.text + "'", t);
        if (next().kind != Tok::LParen)
            fail_at("expected '(' after " + t.text, toks_[pos_ - 1]);
        ExpPoly arg = expr();
        if (next().kind != Tok::RParen)
            fail_at("expected ')'", toks_[pos_ - 1]);
        if (t.text == "exp") {
            if (!arg.is_polynomial())
                throw NonPolynomialExponent("exp argument at " + std::to_string(t.line) + ":" +
                                            std::to_string(t.col) + " is not a polynomial");
            return ExpPoly::exp_of(arg.as_poly());
        }
        CNum v;
        if (!as_constant(arg, v))
            fail_at("sqrt takes a constant argument", t);
        if (v.imag() == 0.0)
            v = CNum(v.real(), 0.0);
        return constant(std::sqrt(v));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::size_t dim_;
    double tol_;
};

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string monomial_text(const Monomial &m) {
    std::string s;
    for (std::size_t j = 0; j < m.dim(); ++j) {
        if (m[j] == 0)
            continue;
        if (!s.empty())
            s += "*";
        s += "z" + std::to_string(j + 1);
        if (m[j] > 1)
            s += "^" + std::to_string(m[j]);
    }
    return s;
}

} // namespace

ExpPoly parse_expr(const std::string &text, std::size_t dim, double tol) {
    std::vector<Token> toks = lex(text);
    std::size_t used = 0;
    for (const auto &t : toks)
        if (t.kind == Tok::Var)
            used = std::max(used, t.var);
    if (dim == 0)
        dim = std::max<std::size_t>(1, used);
    return Parser(std::move(toks), dim, tol).parse();
}

Poly parse_poly(const std::string &text, std::size_t dim, double tol) {
    const ExpPoly e = parse_expr(text, dim, tol);
    if (!e.is_polynomial())
        throw NonPolynomialExponent("'" + text + "' is not a polynomial");
    return e.as_poly();
}

CNum parse_constant(const std::string &text) {
    const ExpPoly e = parse_expr(text, 1);
    if (e.is_polynomial()) {
        const Poly p = e.as_poly();
        if (p.is_constant())
            return p.constant_term();
    }
    throw SyntaxError("'" + text + "' is not a constant", 1, 1);
}

std::string print_cnum(CNum v) {
    const double re = v.real() == 0.0 ? 0.0 : v.real();
    const double im = v.imag() == 0.0 ? 0.0 : v.imag();
    if (im == 0.0)
        return re < 0 ? "(" + fmt(re) + ")" : fmt(re);
    if (re == 0.0)
        return im < 0 ? "(" + fmt(im) + "i)" : fmt(im) + "i";
    return "(" + fmt(re) + (im < 0 ? "-" : "+") + fmt(std::abs(im)) + "i)";
}

std::string print_poly(const Poly &p) {
    if (p.is_zero())
        return "0";
    std::string s;
    for (const auto &[m, c] : p.terms()) {
        if (!s.empty())
            s += " + ";
        const std::string mono = monomial_text(m);
        if (mono.empty())
            s += print_cnum(c);
        else if (c == CNum(1.0))
            s += mono;
        else
            s += print_cnum(c) + "*" + mono;
    }
    return s;
}

std::string print_expr(const ExpPoly &e) {
    if (e.is_zero())
        return "0";
    std::string s;
    for (const auto &t : e.terms()) {
        if (!s.empty())
            s += " + ";
        Poly expo = t.expo;
        if (t.log_scale != 0.0)
            expo = expo + Poly::constant(expo.dim(), t.log_scale, expo.tol());
        if (expo.is_zero()) {
            s += print_poly(t.coeff);
            continue;
        }
        if (t.coeff.is_constant() && t.coeff.constant_term() == CNum(1.0)) {
            // nothing to print in front
        } else if (t.coeff.terms().size() == 1) {
            s += print_poly(t.coeff) + "*";
        } else {
            s += "(" + print_poly(t.coeff) + ")*";
        }
        s += "exp(" + print_poly(expo) + ")";
    }
    return s;
}

} // namespace fermat
