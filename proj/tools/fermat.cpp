#include "fermat/error.hpp"
#include "fermat/parser.hpp"
#include "fermat/sampler.hpp"
#include "fermat/scenario.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

using nlohmann::json;
using namespace fermat;

namespace {

struct Common {
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::optional<unsigned> points;
    bool json = false;
};

void add_common(CLI::App *cmd, Common &o) {
    cmd->add_option("--seed", o.seed, "seed for numeric sampling (and for sample runs)");
    cmd->add_option("--tol", o.tol, "zero tolerance for coefficients")->check(CLI::PositiveNumber);
    cmd->add_option("--points", o.points, "number of numeric sample points");
    cmd->add_flag("--json", o.json, "print the JSON report");
}

json read_json(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw ScenarioError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw ScenarioError(path + ": " + e.what());
    }
}

/// Precedence: command line, then the scenario file, then FERMAT_DEFAULT_TOL.
Scenario load(json j, const Common &o) {
    if (const char *env = std::getenv("FERMAT_DEFAULT_TOL")) {
        if (!j.contains("tolerances"))
            j["tolerances"] = json::object();
        if (!j["tolerances"].contains("zero")) {
            char *end = nullptr;
            const double v = std::strtod(env, &end);
            if (end == env || *end != '\0' || !(v > 0.0))
                throw ScenarioError("FERMAT_DEFAULT_TOL is not a positive number");
            j["tolerances"]["zero"] = v;
        }
    }
    Scenario sc = Scenario::from_json(j);
    if (o.tol)
        sc.tolerances.zero = *o.tol;
    if (o.seed)
        sc.sampling.seed = *o.seed;
    if (o.points)
        sc.sampling.points = *o.points;
    return sc;
}

int emit(const RunResult &r, const Common &o) {
    if (o.json)
        std::cout << r.report.dump(2) << "\n";
    else
        std::cout << r.summary;
    return r.exit_code;
}

int construct_cmd(const std::string &scenario, const std::string &case_name, const Common &o) {
    FamilySpec spec;
    double tol = kDefaultZeroTol;
    if (!scenario.empty()) {
        const Scenario sc = load(read_json(scenario), o);
        spec = spec_from_json(sc.system, sc.params, sc.tolerances.zero);
        tol = sc.tolerances.zero;
    } else {
        const Scenario sc = load(json{{"mode", "sample"}}, o);
        tol = sc.tolerances.zero;
        const auto open = case_name.find('(');
        const Theorem th = theorem_from_string(case_name.substr(0, open));
        const Subcase sub = open == std::string::npos
                                ? Subcase::None
                                : subcase_from_string(case_name.substr(open + 1, 1));
        spec = sample_spec(th, sub, sc.sampling.seed);
    }
    const Construction b = construct(spec, ConstructOptions{false, tol});
    const auto binds = bindings(spec);
    json j{{"f", print_expr(b.f)},
           {"g", print_expr(b.g)},
           {"g1", print_poly(b.g1)},
           {"g2", print_poly(b.g2)},
           {"system", to_string(system_type_of(spec.theorem))},
           {"constraints", json::array()}};
    bool ok = true;
    for (const auto &c : constraint_set(spec)) {
        const CheckResult r = check(c, binds);
        ok = ok && r.pass;
        j["constraints"].push_back({{"label", c.label}, {"pass", r.pass}, {"deviation", r.deviation}});
    }
    if (o.json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "f  = " << j["f"].get<std::string>() << "\n"
                  << "g  = " << j["g"].get<std::string>() << "\n"
                  << "g1 = " << j["g1"].get<std::string>() << "\n"
                  << "g2 = " << j["g2"].get<std::string>() << "\n";
        for (const auto &c : j["constraints"])
            std::cout << (c["pass"].get<bool>() ? "ok   " : "FAIL ") << c["label"].get<std::string>()
                      << "\n";
    }
    return ok ? 0 : 3;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Constructs and verifies entire solutions of Fermat-type trinomial systems"};
    app.require_subcommand(1);

    Common o;
    std::string scenario, case_name, example;
    unsigned count = 1;
    bool negative = false;

    auto *verify = app.add_subcommand("verify", "run a scenario file and report a verdict");
    verify->add_option("scenario", scenario, "scenario JSON file")->required();
    add_common(verify, o);

    auto *cons = app.add_subcommand("construct", "print the pair of a family and its constraints");
    auto *file_opt = cons->add_option("scenario", scenario, "scenario JSON file");
    cons->add_option("--case", case_name, "sample a spec for this case, e.g. T1_ii(a)")
        ->excludes(file_opt);
    add_common(cons, o);

    auto *audit = app.add_subcommand("audit", "audit a built-in worked example: 3.1 .. 3.5 or all");
    audit->add_option("example", example, "example id")->required();
    add_common(audit, o);

    auto *sample = app.add_subcommand("sample", "verify sampled specs of one case");
    sample->add_option("case", case_name, "case, e.g. T2_iii(c)")->required();
    sample->add_option("--count", count, "number of specs")->check(CLI::PositiveNumber);
    sample->add_flag("--negative", negative, "break one relation of every spec");
    add_common(sample, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (verify->parsed())
            return emit(run(load(read_json(scenario), o)), o);
        if (cons->parsed()) {
            if (scenario.empty() && case_name.empty())
                throw ScenarioError("construct needs a scenario file or --case");
            return construct_cmd(scenario, case_name, o);
        }
        if (audit->parsed()) {
            std::vector<std::string> ids =
                example == "all" ? audit_ids() : std::vector<std::string>{example};
            json all = json::array();
            std::string text;
            for (const auto &id : ids) {
                const RunResult r = run(load(json{{"mode", "audit"}, {"params", {{"example", id}}}}, o));
                all.push_back(r.report);
                text += r.summary;
            }
            if (o.json)
                std::cout << (ids.size() == 1 ? all[0] : all).dump(2) << "\n";
            else
                std::cout << text;
            return 0;
        }
        json params{{"case", case_name}, {"count", count}, {"negative", negative}};
        if (o.seed)
            params["seed"] = *o.seed;
        return emit(run(load(json{{"mode", "sample"}, {"params", params}}, o)), o);
    } catch (const Error &e) {
        std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
        return 1;
    } catch (const json::exception &e) {
        std::cerr << "error: ScenarioError: " << e.what() << "\n";
        return 1;
    }
}
