#include "fermat/scenario.hpp"

#include "fermat/error.hpp"
#include "fermat/parser.hpp"
#include "fermat/sampler.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace fermat {

using nlohmann::json;

namespace {

std::vector<std::vector<CNum>> sample_points(std::size_t n, const Sampling &s) {
    std::mt19937_64 rng(s.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::vector<CNum>> pts(s.points, std::vector<CNum>(n));
    for (auto &p : pts)
        for (auto &z : p) {
            // uniform in the disc of the given radius
            const double r = s.radius * std::sqrt(unit(rng));
            z = std::polar(r, 2.0 * std::numbers::pi * unit(rng));
        }
    return pts;
}

std::string form_text(const std::vector<CNum> &d) {
    std::string s = "(";
    for (std::size_t j = 0; j < d.size(); ++j)
        s += (j ? ", " : "") + print_cnum(d[j]);
    return s + ")";
}

bool h_constant(const PeriodicTerm &t) {
    for (std::size_t m = 1; m < t.poly.size(); ++m)
        if (t.poly[m] != CNum(0.0))
            return false;
    return true;
}

void periodicity(const char *name, const PeriodicPart &part, const ShiftVector &c, double tol,
                 std::vector<ConstraintOutcome> &out, json &defects) {
    if (part.terms.empty()) {
        if (part.realized.is_zero() || part.realized.dim() != c.size())
            return;
        const Poly diff = part.realized.shift(c) - part.realized;
        out.push_back({std::string(name) + "(z + c) = " + name + "(z)", diff.is_zero(),
                       diff.max_abs_coeff()});
        return;
    }
    const std::vector<CNum> dc = shift_defects(part, c);
    for (std::size_t i = 0; i < part.terms.size(); ++i) {
        const PeriodicTerm &t = part.terms[i];
        defects.push_back(json{{"part", name},
                               {"form", json::array()},
                               {"dc", cnum_to_json(dc[i])},
                               {"constantH", h_constant(t)}});
        for (CNum d : t.form)
            defects.back()["form"].push_back(cnum_to_json(d));
        if (h_constant(t))
            continue;
        double scale = 0.0;
        for (std::size_t j = 0; j < c.size(); ++j)
            scale += std::abs(t.form[j]) * std::abs(c[j]);
        const double dev = std::abs(dc[i]);
        out.push_back({std::string(name) + " term " + std::to_string(i + 1) + ": d.c = 0 for d = " +
                           form_text(t.form) + " (d.c = " + print_cnum(dc[i]) + ")",
                       dev <= tol * std::max(1.0, scale), dev});
    }
}

std::pair<Theorem, Subcase> parse_case(const json &params) {
    if (!params.contains("case"))
        throw ScenarioError("params.case is required");
    std::string name = params.at("case").get<std::string>();
    std::string sub = params.value("subcase", std::string());
    const auto open = name.find('(');
    if (open != std::string::npos) {
        if (name.back() != ')')
            throw ScenarioError("malformed case '" + name + "'");
        sub = name.substr(open + 1, name.size() - open - 2);
        name = name.substr(0, open);
    }
    return {theorem_from_string(name), subcase_from_string(sub)};
}

std::vector<CNum> cvec(const json &j) {
    if (!j.is_array())
        throw ScenarioError("expected an array of complex values");
    std::vector<CNum> out;
    for (const auto &x : j)
        out.push_back(cnum_from_json(x));
    return out;
}

PeriodicPart part_from_json(const json &j, std::size_t n, double tol) {
    if (j.is_string())
        return PeriodicPart{{}, parse_poly(j.get<std::string>(), n, tol)};
    if (!j.is_array())
        throw ScenarioError("periodic part must be an expression or a list of {form, h}");
    std::vector<PeriodicTerm> terms;
    for (const auto &t : j)
        terms.push_back(PeriodicTerm{cvec(t.at("form")), cvec(t.at("h"))});
    return realize_periodic(n, std::move(terms), tol);
}

std::string case_name(Theorem t, Subcase s) {
    return to_string(t) + (s == Subcase::None ? "" : "(" + to_string(s) + ")");
}

} // namespace

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Solution:
        return "Solution";
    case Verdict::NotASolution:
        return "NotASolution";
    case Verdict::ConstraintViolation:
        return "ConstraintViolation";
    }
    return "?";
}

int exit_code(Verdict v) {
    switch (v) {
    case Verdict::Solution:
        return 0;
    case Verdict::NotASolution:
        return 2;
    case Verdict::ConstraintViolation:
        return 3;
    }
    return 1;
}

bool VerificationReport::constraints_pass() const {
    for (const auto &c : constraints)
        if (!c.pass)
            return false;
    return true;
}

json VerificationReport::to_json() const {
    json j;
    j["title"] = title;
    j["system"] = to_string(system);
    j["verdict"] = to_string(verdict);
    j["constraints"] = json::array();
    for (const auto &c : constraints)
        j["constraints"].push_back({{"label", c.label}, {"pass", c.pass}, {"deviation", c.deviation}});
    j["symbolicResidualZero"] = {symbolic_zero[0], symbolic_zero[1]};
    j["residuals"] = {residual_text[0], residual_text[1]};
    j["numericResidualMax"] = {numeric_max[0], numeric_max[1]};
    j["numericPoints"] = {{"used", points_used}, {"skipped", points_skipped}};
    j["f"] = f;
    j["g"] = g;
    j["g1"] = g1;
    j["g2"] = g2;
    j["diagnostics"] = diagnostics;
    return j;
}

std::string VerificationReport::summary() const {
    std::ostringstream os;
    os << title << " [" << to_string(system) << "]: " << to_string(verdict) << "\n";
    for (const auto &c : constraints)
        os << "  " << (c.pass ? "ok   " : "FAIL ") << c.label << "  (deviation " << c.deviation
           << ")\n";
    os << "  symbolic residuals: " << (symbolic_zero[0] ? "zero" : "nonzero") << ", "
       << (symbolic_zero[1] ? "zero" : "nonzero") << "\n";
    os << "  numeric residual max: " << numeric_max[0] << ", " << numeric_max[1] << " over "
       << points_used << " points (" << points_skipped << " skipped)\n";
    return os.str();
}

VerificationReport verify_pair(const SystemKind &kind, CNum w, const ExpPoly &f, const ExpPoly &g,
                               std::vector<ConstraintOutcome> constraints, const Tolerances &tol,
                               const Sampling &sampling) {
    VerificationReport rep;
    rep.system = kind.type;
    rep.constraints = std::move(constraints);
    rep.f = print_expr(f);
    rep.g = print_expr(g);
    rep.g1 = print_poly(kind.g1);
    rep.g2 = print_poly(kind.g2);

    const Residuals r = residuals(kind, f, g, w);
    rep.symbolic_zero = {r.r1.is_zero(), r.r2.is_zero()};
    rep.residual_text = {print_expr(r.r1), print_expr(r.r2)};

    const ExpPoly df = apply_derivative_part(kind, f);
    const ExpPoly dg = apply_derivative_part(kind, g);
    const bool minus_id = kind.type == SystemType::ShiftDifference;
    for (const auto &z : sample_points(kind.n, sampling)) {
        std::vector<CNum> zc(z);
        for (std::size_t j = 0; j < zc.size(); ++j)
            zc[j] += kind.c[j];
        std::array<double, 2> rel{};
        try {
            const std::array<std::pair<const ExpPoly *, const ExpPoly *>, 2> eqs{
                std::pair{&df, &g}, std::pair{&dg, &f}};
            for (int e = 0; e < 2; ++e) {
                const CNum d = eqs[e].first->eval(z);
                CNum s = eqs[e].second->eval(zc);
                if (minus_id)
                    s -= eqs[e].second->eval(z);
                const CNum expo = (e == 0 ? kind.g1 : kind.g2).eval(z);
                if (expo.real() > kFoldLimit)
                    throw OverflowGuard("right side overflows");
                const CNum rhs = std::exp(expo);
                const CNum res = d * d + 2.0 * w * d * s + s * s - rhs;
                const double scale = std::norm(d) + 2.0 * std::abs(w) * std::abs(d) * std::abs(s) +
                                     std::norm(s) + std::abs(rhs);
                if (!std::isfinite(std::abs(res)) || !std::isfinite(scale))
                    throw OverflowGuard("non-finite sample");
                rel[e] = scale > 0.0 ? std::abs(res) / scale : std::abs(res);
            }
        } catch (const OverflowGuard &) {
            ++rep.points_skipped;
            continue;
        }
        ++rep.points_used;
        rep.numeric_max[0] = std::max(rep.numeric_max[0], rel[0]);
        rep.numeric_max[1] = std::max(rep.numeric_max[1], rel[1]);
    }

    if (!rep.constraints_pass())
        rep.verdict = Verdict::ConstraintViolation;
    else if (!rep.symbolic_zero[0] || !rep.symbolic_zero[1] || rep.numeric_max[0] > tol.numeric ||
             rep.numeric_max[1] > tol.numeric)
        rep.verdict = Verdict::NotASolution;
    else
        rep.verdict = Verdict::Solution;
    return rep;
}

VerificationReport verify_family(const FamilySpec &spec, const Tolerances &tol,
                                 const Sampling &sampling) {
    const Construction built = construct(spec, ConstructOptions{false, tol.zero});
    const auto binds = bindings(spec);
    std::vector<ConstraintOutcome> outcomes;
    for (const auto &c : constraint_set(spec)) {
        const CheckResult res = check(c, binds, tol.constraint);
        outcomes.push_back({c.label, res.pass, res.deviation});
    }
    json defects = json::array();
    periodicity("Phi", spec.phi, spec.c, tol.constraint, outcomes, defects);
    periodicity("Psi", spec.psi, spec.c, tol.constraint, outcomes, defects);

    VerificationReport rep = verify_pair(system_for(spec, built), spec.w, built.f, built.g,
                                         std::move(outcomes), tol, sampling);
    rep.title = case_name(spec.theorem, spec.subcase);
    if (!defects.empty())
        rep.diagnostics["shiftDefects"] = defects;
    return rep;
}

CNum cnum_from_json(const json &j) {
    if (j.is_number())
        return CNum(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return CNum(j[0].get<double>(), j[1].get<double>());
    if (j.is_string())
        return parse_constant(j.get<std::string>());
    throw ScenarioError("cannot read a complex value from " + j.dump());
}

json cnum_to_json(CNum v) { return json::array({v.real(), v.imag()}); }

FamilySpec spec_from_json(const json &system, const json &params, double tol) {
    FamilySpec s;
    std::tie(s.theorem, s.subcase) = parse_case(params);
    if (!system.contains("c"))
        throw ScenarioError("system.c is required");
    s.c = cvec(system.at("c"));
    s.n = system.value("n", s.c.size());
    if (system.contains("w"))
        s.w = cnum_from_json(system.at("w"));
    else
        throw ScenarioError("system.w is required");
    s.k = system.value("k", params.value("k", 1u));
    if (system.contains("kind") &&
        system_type_from_string(system.at("kind").get<std::string>()) != system_type_of(s.theorem))
        throw ScenarioError("system.kind does not match case " + to_string(s.theorem));
    auto cval = [&](const char *key, CNum &dst) {
        if (params.contains(key))
            dst = cnum_from_json(params.at(key));
    };
    if (params.contains("a"))
        s.a = cvec(params.at("a"));
    if (params.contains("b"))
        s.b = cvec(params.at("b"));
    cval("alpha", s.alpha);
    cval("beta", s.beta);
    cval("gamma", s.gamma);
    cval("eta", s.eta);
    cval("xi1", s.xi1);
    cval("xi2", s.xi2);
    cval("d1", s.d1);
    cval("d2", s.d2);
    cval("d3", s.d3);
    cval("d4", s.d4);
    // d1 (d3) may instead be fixed from a target for e^{d1-d2} (e^{d3-d4})
    auto diff = [&](const char *key, CNum base, CNum &dst) {
        if (!params.contains(key))
            return;
        const json &t = params.at(key);
        dst = base + solve_exp(cnum_from_json(t.at("target")), t.value("branch", 0L)).value;
    };
    diff("expD1MinusD2", s.d2, s.d1);
    diff("expD3MinusD4", s.d4, s.d3);
    s.phi = params.contains("phi") ? part_from_json(params.at("phi"), s.n, tol)
                                   : PeriodicPart{{}, Poly(s.n, tol)};
    s.psi = params.contains("psi") ? part_from_json(params.at("psi"), s.n, tol)
                                   : PeriodicPart{{}, Poly(s.n, tol)};
    s.gamma_counted_twice = params.value("gammaCountedTwice", false);
    return s;
}

Scenario Scenario::from_json(const json &j) {
    if (!j.is_object())
        throw ScenarioError("scenario must be a JSON object");
    Scenario s;
    if (!j.contains("mode"))
        throw ScenarioError("scenario.mode is required");
    s.mode = j.at("mode").get<std::string>();
    if (s.mode != "verify-explicit" && s.mode != "construct-and-verify" && s.mode != "audit" &&
        s.mode != "sample")
        throw ScenarioError("unknown mode '" + s.mode + "'");
    s.system = j.value("system", json::object());
    s.params = j.value("params", json::object());
    if (j.contains("tolerances")) {
        const json &t = j.at("tolerances");
        s.tolerances.zero = t.value("zero", s.tolerances.zero);
        s.tolerances.constraint = t.value("constraint", s.tolerances.constraint);
        s.tolerances.numeric = t.value("numeric", s.tolerances.numeric);
    }
    if (j.contains("sampling")) {
        const json &t = j.at("sampling");
        s.sampling.seed = t.value("seed", s.sampling.seed);
        s.sampling.points = t.value("points", s.sampling.points);
        s.sampling.radius = t.value("radius", s.sampling.radius);
    }
    return s;
}

RunResult run(const Scenario &sc) {
    RunResult out;
    const Tolerances &tol = sc.tolerances;
    if (sc.mode == "verify-explicit") {
        SystemKind kind;
        kind.type = system_type_from_string(sc.system.value("kind", std::string("difference")));
        kind.c = cvec(sc.system.at("c"));
        kind.n = sc.system.value("n", kind.c.size());
        kind.k = sc.system.value("k", 1u);
        kind.g1 = parse_poly(sc.system.value("g1", std::string("0")), kind.n, tol.zero);
        kind.g2 = parse_poly(sc.system.value("g2", std::string("0")), kind.n, tol.zero);
        if (!sc.params.contains("f") || !sc.params.contains("g"))
            throw ScenarioError("verify-explicit needs params.f and params.g");
        const ExpPoly f = parse_expr(sc.params.at("f").get<std::string>(), kind.n, tol.zero);
        const ExpPoly g = parse_expr(sc.params.at("g").get<std::string>(), kind.n, tol.zero);
        VerificationReport rep =
            verify_pair(kind, cnum_from_json(sc.system.at("w")), f, g, {}, tol, sc.sampling);
        rep.title = "explicit pair";
        out.report = rep.to_json();
        out.summary = rep.summary();
        out.exit_code = exit_code(rep.verdict);
    } else if (sc.mode == "construct-and-verify") {
        const VerificationReport rep =
            verify_family(spec_from_json(sc.system, sc.params, tol.zero), tol, sc.sampling);
        out.report = rep.to_json();
        out.summary = rep.summary();
        out.exit_code = exit_code(rep.verdict);
    } else if (sc.mode == "audit") {
        if (!sc.params.contains("example"))
            throw ScenarioError("audit needs params.example");
        const std::string id = sc.params.at("example").get<std::string>();
        out.report = audit_json(id, tol, sc.sampling);
        for (const auto &r : out.report.at("reports"))
            out.summary += r.at("title").get<std::string>() + ": " +
                           r.at("verdict").get<std::string>() + "\n";
        out.exit_code = 0;
    } else {
        const auto [th, sub] = parse_case(sc.params);
        const unsigned count = sc.params.value("count", 1u);
        const std::uint64_t seed = sc.params.value("seed", sc.sampling.seed);
        const bool negative = sc.params.value("negative", false);
        out.report = {{"case", case_name(th, sub)}, {"negative", negative}, {"runs", json::array()}};
        out.exit_code = 0;
        for (unsigned i = 0; i < count; ++i) {
            FamilySpec spec = sample_spec(th, sub, seed + i);
            if (negative)
                spec = negative_control(spec);
            const VerificationReport rep = verify_family(spec, tol, sc.sampling);
            json run = rep.to_json();
            run["seed"] = seed + i;
            out.report["runs"].push_back(run);
            out.summary += "seed " + std::to_string(seed + i) + ": " + to_string(rep.verdict) + "\n";
            out.exit_code = std::max(out.exit_code, exit_code(rep.verdict));
        }
    }
    return out;
}

} // namespace fermat
