#pragma once

#include "fermat/constraints.hpp"
#include "fermat/exppoly.hpp"
#include "fermat/trinomial.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fermat {

/// H(d . z) with H given by its coefficients h0, h1, ... in the single
/// variable t = d . z.
struct PeriodicTerm {
    std::vector<CNum> form;
    std::vector<CNum> poly;
};

/// A c-periodic polynomial realized as a sum of polynomials in linear forms
/// annihilating c. The univariate z2 parts of the C^2 families use the form
/// (0, 1), which annihilates c only when c2 = 0; constant H is always periodic.
struct PeriodicPart {
    std::vector<PeriodicTerm> terms;
    Poly realized;
};

/// Validates d . c == 0 for every term with non-constant H and realizes the
/// sum. Throws NotShiftInvariant naming the offending form.
PeriodicPart build_periodic(const ShiftVector &c, std::vector<PeriodicTerm> terms,
                            double tol = kDefaultZeroTol);
/// Realizes without validation (used by the audits).
PeriodicPart realize_periodic(std::size_t dim, std::vector<PeriodicTerm> terms,
                              double tol = kDefaultZeroTol);
/// d . c for every term, in order.
std::vector<CNum> shift_defects(const PeriodicPart &part, const ShiftVector &c);

enum class Theorem { T1_i, T1_ii, T1_iii, T2_i, T2_ii, T2_iii, T3_i, T3_ii };
enum class Subcase { None, A, B, C, D };

std::string to_string(Theorem t);
std::string to_string(Subcase s);
Theorem theorem_from_string(const std::string &s);
Subcase subcase_from_string(const std::string &s);
bool has_subcases(Theorem t);
SystemType system_type_of(Theorem t);
/// Every (case, subcase) pair, 20 in total.
std::vector<std::pair<Theorem, Subcase>> all_cases();

/// Parameters of one solution family. `a` holds L (or L1), `b` holds L2.
/// For the C^2 families `phi` holds chi / Phi1 and `psi` holds Psi1.
struct FamilySpec {
    Theorem theorem = Theorem::T1_i;
    Subcase subcase = Subcase::None;
    std::size_t n = 2;
    ShiftVector c;
    CNum w = 2.0;
    unsigned k = 1;
    std::vector<CNum> a;
    std::vector<CNum> b;
    CNum alpha = 1.0;
    CNum beta = 0.0;
    CNum gamma = 0.0;
    CNum eta = 0.0;
    CNum xi1 = 1.0;
    CNum xi2 = 1.0;
    CNum d1 = 0.0, d2 = 0.0, d3 = 0.0, d4 = 0.0;
    PeriodicPart phi;
    PeriodicPart psi;
    /// Alternative reading of the T3 families where gamma sits both inside
    /// L(z) and separately in the exponent; L(c) then includes gamma.
    bool gamma_counted_twice = false;
};

struct Construction {
    ExpPoly f;
    ExpPoly g;
    Poly g1;
    Poly g2;
};

struct ConstructOptions {
    bool require_periodic = true;
    double tol = kDefaultZeroTol;
};

/// Throws InvalidCase, ZeroCoefficient, NotShiftInvariant or DegenerateW.
void validate(const FamilySpec &spec, const ConstructOptions &opts = {});
Construction construct(const FamilySpec &spec, const ConstructOptions &opts = {});
/// The system the family solves, with g1/g2 from the construction.
SystemKind system_for(const FamilySpec &spec, const Construction &built);

/// Symbol values used by constraint_set: L(c), L1(c), L2(c), d1..d4, eta, alpha^k.
std::map<std::string, CNum> bindings(const FamilySpec &spec);
std::vector<Constraint> constraint_set(const FamilySpec &spec);

} // namespace fermat
