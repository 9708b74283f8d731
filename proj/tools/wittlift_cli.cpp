// Command-line front end: probe smoothness of finitely presented formal
// W-algebras, run T^1 lifting checks, reproduce bundled scenarios, and dump
// ring tables.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "wittlift/expr.hpp"
#include "wittlift/lifting.hpp"
#include "wittlift/report_json.hpp"

using nlohmann::json;
using namespace wittlift;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitRefuted = 2;
constexpr int kExitPrecisionLimited = 3;

struct ProblemFile {
    std::uint32_t p = 3;
    std::uint32_t precision = 5;
    std::optional<std::uint32_t> degree_cap;
    std::vector<std::string> vars;
    std::vector<std::string> generators;
    std::optional<std::vector<std::uint64_t>> point;
    std::map<std::string, std::string> images; // t1check base map

    bool operator==(const ProblemFile&) const = default;
};

json problem_to_json(const ProblemFile& f) {
    json out{{"p", f.p},
             {"precision", f.precision},
             {"vars", f.vars},
             {"generators", f.generators}};
    if (f.degree_cap)
        out["degree_cap"] = *f.degree_cap;
    if (f.point)
        out["point"] = *f.point;
    if (!f.images.empty())
        out["images"] = f.images;
    return out;
}

ProblemFile problem_from_json(const json& j) {
    ProblemFile f;
    if (!j.is_object())
        throw Error("problem file must be a JSON object");
    for (const char* key : {"p", "precision", "vars", "generators"})
        if (!j.contains(key))
            throw Error(std::string("problem file is missing the '") + key + "' field");
    f.p = j.at("p").get<std::uint32_t>();
    f.precision = j.at("precision").get<std::uint32_t>();
    if (j.contains("degree_cap"))
        f.degree_cap = j.at("degree_cap").get<std::uint32_t>();
    f.vars = j.at("vars").get<std::vector<std::string>>();
    f.generators = j.at("generators").get<std::vector<std::string>>();
    if (j.contains("point"))
        f.point = j.at("point").get<std::vector<std::uint64_t>>();
    if (j.contains("images"))
        f.images = j.at("images").get<std::map<std::string, std::string>>();
    return f;
}

ProblemFile load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open problem file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error("problem file '" + path + "': " + e.what());
    }
    return problem_from_json(j);
}

void validate_vars(const ProblemFile& f) {
    for (const auto& v : f.vars) {
        if (v.empty() || v == "p")
            throw Error("invalid variable name '" + v + "'");
        if (!(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_'))
            throw Error("invalid variable name '" + v + "'");
        for (char c : v)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
                throw Error("invalid variable name '" + v + "'");
    }
    for (std::size_t i = 0; i < f.vars.size(); ++i)
        for (std::size_t j = i + 1; j < f.vars.size(); ++j)
            if (f.vars[i] == f.vars[j])
                throw Error("variable names must be distinct");
}

Presentation build_presentation(const ProblemFile& f, std::uint32_t default_cap) {
    validate_vars(f);
    RingParams params(f.p); // throws "p must be prime"
    SeriesContext ctx(params, f.precision, f.degree_cap.value_or(default_cap), f.vars);
    std::vector<TruncatedSeries> gens;
    for (std::size_t i = 0; i < f.generators.size(); ++i) {
        try {
            gens.push_back(parse_series_expr(f.generators[i], ctx));
        } catch (const ParseError& e) {
            throw ParseError("generator " + std::to_string(i) + ", line " +
                                 std::to_string(e.line) + ", column " +
                                 std::to_string(e.column) + ": " + e.what(),
                             e.line, e.column);
        }
    }
    return Presentation(ctx, std::move(gens));
}

const char* verdict_name(ProbeVerdict v) {
    switch (v) {
    case ProbeVerdict::RefutedWithWitness: return "REFUTED (obstruction witness found)";
    case ProbeVerdict::NoObstructionFound: return "no obstruction found up to bounds";
    case ProbeVerdict::PrecisionLimited: return "precision-limited (inconclusive)";
    }
    return "?";
}

int verdict_exit_code(ProbeVerdict v) {
    switch (v) {
    case ProbeVerdict::RefutedWithWitness: return kExitRefuted;
    case ProbeVerdict::NoObstructionFound: return kExitOk;
    case ProbeVerdict::PrecisionLimited: return kExitPrecisionLimited;
    }
    return kExitInputError;
}

void print_probe_report(const ProbeReport& rep, std::ostream& out) {
    if (const auto* pt = std::get_if<WPoint>(&rep.point)) {
        out << "condition (i): point found at (";
        for (std::size_t i = 0; i < pt->coordinates.size(); ++i)
            out << (i ? ", " : "") << pt->coordinates[i];
        out << ")\n";
    } else {
        out << "condition (i): unknown: " << std::get<WPointUnknown>(rep.point).reason
            << "\n";
    }
    out << "minimization: eliminated [";
    for (std::size_t i = 0; i < rep.eliminated_vars.size(); ++i)
        out << (i ? ", " : "") << rep.eliminated_vars[i];
    out << "]; remaining vars [";
    for (std::size_t i = 0; i < rep.remaining_vars.size(); ++i)
        out << (i ? ", " : "") << rep.remaining_vars[i];
    out << "]; " << rep.generators_remaining << " generator(s)\n";
    out << "linear diagnostics: m* = ";
    if (rep.m_star)
        out << *rep.m_star;
    else
        out << "none";
    out << "\n";
    for (const auto& cell : rep.cells) {
        out << "  condition (" << cell.condition << ")";
        if (cell.condition == "ii")
            out << " m=" << cell.m;
        else if (cell.condition == "curve")
            out << " d=" << cell.d;
        else
            out << " (m,d)=(" << cell.m << "," << cell.d << ")";
        out << ": ";
        switch (cell.report.status) {
        case CellStatus::Passed:
            out << "passed (" << cell.report.candidates_evaluated << " candidates, "
                << cell.report.well_defined_count << " well-defined)";
            break;
        case CellStatus::Refuted:
            out << "REFUTED after " << cell.report.candidates_evaluated << " candidates";
            break;
        case CellStatus::BudgetExhausted:
            out << "budget exhausted (" << cell.report.candidates_evaluated << " of ~"
                << cell.report.total_candidates << ")";
            break;
        case CellStatus::PrecisionLimited:
            out << "precision-limited: " << cell.report.note;
            break;
        }
        if (!cell.report.note.empty() && cell.report.status == CellStatus::Passed)
            out << " -- " << cell.report.note;
        out << "\n";
    }
    out << "verdict: " << verdict_name(rep.verdict) << "\n";
    if (rep.witness) {
        const Witness& w = *rep.witness;
        out << "witness: condition (" << w.condition << ")";
        if (w.condition == "ii")
            out << " at m = " << w.m;
        else if (w.condition == "curve")
            out << " at d = " << w.d;
        else
            out << " at (m,d) = (" << w.m << "," << w.d << ")";
        out << ", target ring " << w.target.name() << "\n";
        for (std::size_t i = 0; i < w.images.size(); ++i) {
            std::string var = i < rep.remaining_vars.size() ? rep.remaining_vars[i]
                                                            : "T" + std::to_string(i);
            out << "  " << var << " -> " << w.images[i].to_string() << "\n";
        }
        out << "  no-lift certificate: residual " << w.certificate.residual << " mod p^"
            << w.certificate.modulus_exponent << " (" << w.certificate.matrix.size()
            << " congruences)\n";
    }
    for (const auto& c : rep.caveats)
        out << "note: " << c << "\n";
}

int run_probe(const std::string& path, const ProbeBounds& bounds, bool as_json) {
    ProblemFile file = load_problem(path);
    Presentation pres = build_presentation(file, bounds.m_max + bounds.d_max);
    ProbeReport rep = probe_smoothness(pres, bounds, file.point);
    if (as_json) {
        json out{{"command", "probe"},
                 {"input", problem_to_json(file)},
                 {"bounds", json{{"m_max", bounds.m_max},
                                 {"d_max", bounds.d_max},
                                 {"budget", bounds.budget}}},
                 {"report", probe_report_json(rep)}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "probe: " << path << "\n";
        print_probe_report(rep, std::cout);
    }
    return verdict_exit_code(rep.verdict);
}

int run_t1check(const std::string& path, std::uint32_t m, std::uint32_t d, bool as_json) {
    if (d < 2)
        throw Error("t1check needs d >= 2 (the surjection drops d by one)");
    if (m < 1)
        throw Error("t1check needs m >= 1");
    ProblemFile file = load_problem(path);
    Presentation pres = build_presentation(file, m + d + 1);
    RingParams params(file.p);

    TruncationMap trunc = make_truncation(RingDescriptor::pd(params, m, d),
                                          RingDescriptor::pd(params, m, d - 1));
    std::vector<RingElem> images;
    for (const auto& var : *pres.ctx.vars) {
        auto it = file.images.find(var);
        if (it == file.images.end())
            throw Error("t1check: missing image for variable '" + var + "'");
        images.push_back(parse_ring_expr(it->second, trunc.source()));
    }
    auto wd = check_well_defined(pres, trunc.source(), images);
    if (auto* fail = std::get_if<WellDefinedFailure>(&wd)) {
        std::cerr << "error: base map is not well defined;";
        for (const auto& [idx, val] : fail->violations)
            std::cerr << " generator " << idx << " evaluates to " << val.to_string();
        std::cerr << "\n";
        return kExitInputError;
    }
    AlgebraMap X = std::get<AlgebraMap>(wd);
    std::vector<RingElem> rimages;
    for (const auto& im : X.images)
        rimages.push_back(trunc.apply(im));
    auto wdp = check_well_defined(pres, trunc.target(), rimages);
    AlgebraMap Xp = std::get<AlgebraMap>(wdp);

    T1LiftingOutcome outcome = t1_lifting_check(X, Xp, trunc);
    if (as_json) {
        json out{{"command", "t1check"},
                 {"input", problem_to_json(file)},
                 {"m", m},
                 {"d", d},
                 {"report", t1_outcome_json(outcome, X, Xp)}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "t1check: " << path << " over " << trunc.source()->descriptor().name()
                  << " -> " << trunc.target()->descriptor().name() << "\n";
        switch (outcome.status) {
        case T1LiftStatus::Surjective:
            std::cout << "T^1 restriction is surjective (" << outcome.classes_checked
                      << " generator classes lift)\n";
            break;
        case T1LiftStatus::NotSurjective: {
            std::cout << "T^1 restriction is NOT surjective; unliftable class:\n";
            for (std::size_t i = 0; i < outcome.witness->eps_parts.size(); ++i)
                std::cout << "  " << (*pres.ctx.vars)[i] << " -> "
                          << Xp.images[i].to_string() << " + eps*("
                          << outcome.witness->eps_parts[i].to_string() << ")\n";
            break;
        }
        case T1LiftStatus::PrecisionLimited:
            std::cout << "precision-limited: " << outcome.note << "\n";
            break;
        }
    }
    switch (outcome.status) {
    case T1LiftStatus::Surjective: return kExitOk;
    case T1LiftStatus::NotSurjective: return kExitRefuted;
    case T1LiftStatus::PrecisionLimited: return kExitPrecisionLimited;
    }
    return kExitInputError;
}

ProblemFile bundled_problem(const std::string& name) {
    if (name == "node")
        return ProblemFile{3, 5, std::nullopt, {"x", "y"}, {"x*y"}, std::nullopt, {}};
    if (name == "free")
        return ProblemFile{3, 5, std::nullopt, {"x", "y"}, {}, std::nullopt, {}};
    if (name == "p-torsion")
        return ProblemFile{3, 5, std::nullopt, {"x"}, {"p*x"}, std::nullopt, {}};
    throw Error("no bundled problem named '" + name + "'");
}

int run_example(const std::string& name, bool as_json) {
    const std::vector<std::string> known = {"deligne-p2", "deligne-p3", "deligne-p5",
                                            "node",       "free",       "p-torsion"};
    if (name.rfind("deligne-p", 0) == 0) {
        std::uint32_t p = 0;
        if (name == "deligne-p2")
            p = 2;
        else if (name == "deligne-p3")
            p = 3;
        else if (name == "deligne-p5")
            p = 5;
        if (p != 0) {
            DeligneReport rep = deligne_example(p);
            if (as_json) {
                std::cout << json{{"command", "example"},
                                  {"name", name},
                                  {"report", deligne_report_json(rep)}}
                                 .dump(2)
                          << "\n";
            } else {
                std::cout << "example: " << name << "\n";
                for (const auto& line : rep.chain)
                    std::cout << "  " << line << "\n";
                std::cout << (rep.ok() ? "counterexample verified: the T^1-lifting "
                                         "property fails for the p-torsion functor\n"
                                       : "UNEXPECTED: verification failed\n");
            }
            return rep.ok() ? kExitOk : kExitInputError;
        }
    }
    if (name == "node" || name == "free" || name == "p-torsion") {
        ProblemFile file = bundled_problem(name);
        ProbeBounds bounds;
        Presentation pres = build_presentation(file, bounds.m_max + bounds.d_max);
        ProbeReport rep = probe_smoothness(pres, bounds, file.point);
        if (as_json) {
            json out{{"command", "example"},
                     {"name", name},
                     {"input", problem_to_json(file)},
                     {"report", probe_report_json(rep)}};
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << "example: " << name << "\n";
            std::cout << "problem: " << problem_to_json(file).dump() << "\n";
            print_probe_report(rep, std::cout);
        }
        bool expected = name == "free" ? rep.verdict == ProbeVerdict::NoObstructionFound
                                       : rep.verdict == ProbeVerdict::RefutedWithWitness;
        return expected ? kExitOk : kExitInputError;
    }
    std::cerr << "error: unknown example '" << name << "'. Available:";
    for (const auto& k : known)
        std::cerr << " " << k;
    std::cerr << "\n";
    return kExitInputError;
}

int run_ring_table(const std::string& family, std::uint32_t p, std::uint32_t m,
                   std::uint32_t d, std::uint32_t n, const std::string& g_spec) {
    RingParams params(p);
    std::optional<std::vector<std::uint32_t>> g;
    if (!g_spec.empty() && g_spec != "0") {
        std::vector<std::uint32_t> coeffs;
        std::size_t pos = 0;
        while (pos < g_spec.size()) {
            std::size_t comma = g_spec.find(',', pos);
            std::string tok = g_spec.substr(pos, comma == std::string::npos ? std::string::npos
                                                                            : comma - pos);
            coeffs.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
            if (comma == std::string::npos)
                break;
            pos = comma + 1;
        }
        g = std::move(coeffs);
    }

    RingDescriptor desc = [&] {
        if (family == "wm")
            return RingDescriptor::wm(params, m);
        if (family == "wm-eps")
            return RingDescriptor::wm_eps(params, m);
        if (family == "wm-mixed-eps")
            return RingDescriptor::wm_mixed_eps(params, m);
        if (family == "pd")
            return RingDescriptor::pd(params, m, d);
        if (family == "pd-eps")
            return RingDescriptor::pd_eps(params, m, d);
        if (family == "pd-eps-quot")
            return RingDescriptor::pd_eps_quot(params, m, d);
        if (family == "ramified")
            return RingDescriptor::ramified(params, n, g, d);
        if (family == "residue-series")
            return RingDescriptor::residue_series(params, d);
        throw Error("unknown ring family '" + family +
                    "' (expected wm, wm-eps, wm-mixed-eps, pd, pd-eps, pd-eps-quot, "
                    "ramified, residue-series)");
    }();
    RingPtr ring = make_ring(desc);
    std::cout << ring_table_json(*ring).dump(2) << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact divided-power test algebras and smoothness obstruction probes "
                 "for formal W-algebras"};
    app.require_subcommand(1);

    std::string probe_file;
    ProbeBounds bounds;
    bool probe_json = false;
    auto* probe = app.add_subcommand("probe", "run the smoothness probe on a problem file");
    probe->add_option("file", probe_file, "problem file (JSON)")->required();
    probe->add_option("--m-max", bounds.m_max, "largest precision exponent m to scan");
    probe->add_option("--d-max", bounds.d_max, "largest divided-power cutoff d to scan");
    probe->add_option("--budget", bounds.budget, "candidate-map budget per grid cell");
    probe->add_flag("--json", probe_json, "emit the report as JSON");

    std::string t1_file;
    std::uint32_t t1_m = 2, t1_d = 2;
    bool t1_json = false;
    auto* t1 = app.add_subcommand("t1check",
                                  "check T^1 surjectivity along W_{m,d} -> W_{m,d-1}");
    t1->add_option("file", t1_file, "problem file with base-map images")->required();
    t1->add_option("--m", t1_m, "precision exponent m")->required();
    t1->add_option("--d", t1_d, "divided-power cutoff d (>= 2)")->required();
    t1->add_flag("--json", t1_json, "emit the report as JSON");

    std::string example_name;
    bool example_json = false;
    auto* example = app.add_subcommand("example", "run a bundled scenario");
    example->add_option("name", example_name, "deligne-p2|deligne-p3|deligne-p5|node|free|p-torsion")
        ->required();
    example->add_flag("--json", example_json, "emit the report as JSON");

    std::string rt_family;
    std::uint32_t rt_p = 3, rt_m = 1, rt_d = 1, rt_n = 1;
    std::string rt_g;
    auto* rt = app.add_subcommand("ring-table", "dump a test ring's table as JSON");
    rt->add_option("family", rt_family, "ring family")->required();
    rt->add_option("-p,--prime", rt_p, "prime p");
    rt->add_option("-m,--precision", rt_m, "precision exponent m");
    rt->add_option("-d,--cutoff", rt_d, "divided-power / degree cutoff d");
    rt->add_option("-n,--ramification", rt_n, "ramification exponent n");
    rt->add_option("-g,--gpoly", rt_g, "g coefficients, constant first (e.g. \"1,0,2\"); "
                                       "omit or \"0\" for g = 0");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*probe)
            return run_probe(probe_file, bounds, probe_json);
        if (*t1)
            return run_t1check(t1_file, t1_m, t1_d, t1_json);
        if (*example)
            return run_example(example_name, example_json);
        if (*rt)
            return run_ring_table(rt_family, rt_p, rt_m, rt_d, rt_n, rt_g);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
