#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fermat {

/// Base class of every error raised by the library. `kind()` is a stable
/// identifier that reports and the CLI surface verbatim.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string &what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string &kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define FERMAT_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string &what) : Error(#Name, what) {}         \
    };

FERMAT_DEFINE_ERROR(DimensionMismatch)
FERMAT_DEFINE_ERROR(IndexOutOfRange)
FERMAT_DEFINE_ERROR(InvalidOrder)
FERMAT_DEFINE_ERROR(OverflowGuard)
FERMAT_DEFINE_ERROR(DegenerateW)
FERMAT_DEFINE_ERROR(NotShiftInvariant)
FERMAT_DEFINE_ERROR(ZeroCoefficient)
FERMAT_DEFINE_ERROR(InvalidCase)
FERMAT_DEFINE_ERROR(ZeroTarget)
FERMAT_DEFINE_ERROR(SingularSolve)
FERMAT_DEFINE_ERROR(UnboundSymbol)
FERMAT_DEFINE_ERROR(NonPolynomialExponent)
FERMAT_DEFINE_ERROR(ScenarioError)

#undef FERMAT_DEFINE_ERROR

/// Parse failures carry the 1-based line and column of the offending token.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string &msg, std::size_t line, std::size_t column)
        : Error("SyntaxError", msg + " at " + std::to_string(line) + ":" +
                                   std::to_string(column)),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace fermat
