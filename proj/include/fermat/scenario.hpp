#pragma once

#include "fermat/families.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace fermat {

enum class Verdict { Solution, NotASolution, ConstraintViolation };
std::string to_string(Verdict v);
/// 0 Solution, 2 NotASolution, 3 ConstraintViolation.
int exit_code(Verdict v);

struct Tolerances {
    double zero = kDefaultZeroTol;         ///< coefficient dropping in Poly/ExpPoly
    double constraint = kDefaultConstraintTol;
    double numeric = 1e-6;                  ///< bound on |r| / scale at sample points
};

struct Sampling {
    std::uint64_t seed = 12345;
    unsigned points = 100;
    double radius = 2.0;                    ///< |z_j| <= radius
};

struct ConstraintOutcome {
    std::string label;
    bool pass = false;
    double deviation = 0.0;
};

struct VerificationReport {
    std::string title;
    SystemType system = SystemType::Difference;
    std::vector<ConstraintOutcome> constraints;
    std::array<bool, 2> symbolic_zero{false, false};
    std::array<std::string, 2> residual_text;
    std::array<double, 2> numeric_max{0.0, 0.0};
    unsigned points_used = 0;
    unsigned points_skipped = 0;
    std::string f, g, g1, g2;
    Verdict verdict = Verdict::NotASolution;
    nlohmann::json diagnostics = nlohmann::json::object();

    bool constraints_pass() const;
    nlohmann::json to_json() const;
    std::string summary() const;
};

/// Residuals of the system symbolically and at sampled points, and the
/// verdict that combines them with the given constraint outcomes.
VerificationReport verify_pair(const SystemKind &kind, CNum w, const ExpPoly &f, const ExpPoly &g,
                               std::vector<ConstraintOutcome> constraints, const Tolerances &tol,
                               const Sampling &sampling);

/// Constructs the family (periodicity is reported, not enforced), checks its
/// constraint set plus one shift condition per periodic term, and verifies.
VerificationReport verify_family(const FamilySpec &spec, const Tolerances &tol,
                                 const Sampling &sampling);

/// Complex values in scenario files: a number, [re, im] or a constant expression.
CNum cnum_from_json(const nlohmann::json &j);
nlohmann::json cnum_to_json(CNum v);

/// Reads a FamilySpec from the `system` and `params` objects of a scenario.
FamilySpec spec_from_json(const nlohmann::json &system, const nlohmann::json &params,
                          double tol = kDefaultZeroTol);

struct Scenario {
    std::string mode;
    nlohmann::json system = nlohmann::json::object();
    nlohmann::json params = nlohmann::json::object();
    Tolerances tolerances;
    Sampling sampling;

    /// Throws ScenarioError on missing keys or an unknown mode.
    static Scenario from_json(const nlohmann::json &j);
};

struct RunResult {
    nlohmann::json report;
    std::string summary;
    int exit_code = 0;
};

RunResult run(const Scenario &scenario);

/// Audit of a built-in worked example, id in {3.1, ..., 3.5}. Example 3.5 yields one
/// report per reading of its shift condition.
std::vector<VerificationReport> audit_example(const std::string &id, const Tolerances &tol,
                                              const Sampling &sampling);
std::vector<std::string> audit_ids();
nlohmann::json audit_json(const std::string &id, const Tolerances &tol, const Sampling &sampling);

} // namespace fermat
