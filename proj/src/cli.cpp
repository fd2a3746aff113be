#include "fiberlift/cli.hpp"

#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fiberlift/ca_examples.hpp"
#include "fiberlift/error.hpp"
#include "fiberlift/io.hpp"

namespace fiberlift {

namespace {

void emit(const Json& j, std::ostream& out) { out << j.dump(2) << '\n'; }

LabeledGraph load_code(const RunConfig& c) {
    if (c.inputs.empty()) throw Error(ErrorKind::InvalidInput, c.command + " needs a code or graph file");
    return code_graph_from_json(read_json_file(c.inputs.front()));
}

MonteCarloParams mc_params(const RunConfig& c) {
    MonteCarloParams p;
    p.length = c.length;
    p.depth = c.depth;
    p.tolerance = c.tolerance;
    p.seed = c.seed;
    return p;
}

void require_format(const RunConfig& c, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed)
        if (c.format == f) return;
    throw Error(ErrorKind::InvalidInput, "format " + c.format + " is not available for " + c.command);
}

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(6) << x;
    return os.str();
}

void lift_table(const LiftReport& r, std::ostream& out) {
    out << "base measure: " << r.base_measure << "\n";
    out << "degree: " << r.degree << "  method: " << to_string(r.method) << "\n";
    if (r.monte_carlo)
        out << "T = " << r.monte_carlo->params.length << "  L = " << r.monte_carlo->params.depth
            << "  tolerance = " << fmt(r.monte_carlo->tolerance) << "  seed = " << r.monte_carlo->params.seed
            << "  burn-in = " << r.monte_carlo->burn_in << "\n";
    out << "lift\tmultiplicity\tcoordinates\tsingle-letter frequencies\n";
    for (const auto& l : r.lifts) {
        out << l.description << '\t' << l.multiplicity << '\t';
        for (std::size_t i = 0; i < l.coordinates.size(); ++i) out << (i ? "," : "") << l.coordinates[i];
        out << '\t';
        if (r.monte_carlo)
            for (std::size_t i = 0; i < r.monte_carlo->alphabet.size() && i < l.frequencies.size(); ++i)
                out << (i ? " " : "") << r.monte_carlo->alphabet[i] << ":" << fmt(l.frequencies[i]);
        out << '\n';
    }
    for (const auto& w : r.warnings) out << "warning: " << w << "\n";
}

int cmd_analyze(const RunConfig& c, std::ostream& out) {
    require_format(c, {"json", "table", "dot"});
    auto g = load_code(c);
    if (c.format == "dot") {
        out << to_dot(g);
        return 0;
    }
    auto structure = analyze_graph(g);
    Json j;
    j["structure"] = to_json(g, structure);
    if (structure.is_irreducible) {
        auto t = g.trimmed();
        j["degree"] = to_json(t, degree_report(t));
        j["constant_to_one"] = is_finite_to_one(t) && is_constant_to_one(t);
    } else {
        j["degree"] = nullptr;
        j["note"] = "graph is not irreducible; entropy and degree are not computed";
    }
    if (c.format == "json") {
        emit(j, out);
        return 0;
    }
    out << "symbols: " << g.size() << "  transitions: " << g.transition_count() << "\n";
    out << "essential: " << (structure.is_essential ? "yes" : "no") << "  irreducible: "
        << (structure.is_irreducible ? "yes" : "no") << "\n";
    for (const auto& comp : structure.components)
        out << "component of " << comp.symbols.size() << " symbols, period " << comp.period << "\n";
    if (structure.is_irreducible) {
        const auto& d = j["degree"];
        out << "entropy X: " << d["entropy_x"].get<double>() << "  entropy Y: " << d["entropy_y"].get<double>() << "\n";
        out << "finite-to-one: " << (d["finite_to_one"].get<bool>() ? "yes" : "no");
        if (!d["degree"].is_null()) out << "  degree: " << d["degree"].get<int>();
        out << "\n";
    }
    return 0;
}

int cmd_degree(const RunConfig& c, std::ostream& out) {
    require_format(c, {"json", "table"});
    auto g = load_code(c).trimmed();
    auto r = compute_degree(g);
    if (c.format == "json") {
        emit(to_json(g, r), out);
        return 0;
    }
    out << "finite-to-one: yes\ndegree: " << *r.degree << "\nmagic word: " << g.render_y(r.magic_word)
        << " at position " << r.magic_position << "\nentropy X: " << r.entropy_x << "\nentropy Y: " << r.entropy_y << "\n";
    return 0;
}

int cmd_joining(const RunConfig& c, std::ostream& out) {
    require_format(c, {"json", "dot", "table"});
    auto g = load_code(c).trimmed();
    auto lambda = degree_joining_graph(g);
    if (c.format == "dot") out << to_dot(lambda.lambda.graph, "Lambda");
    else if (c.format == "json") emit(to_json(lambda), out);
    else
        out << "degree: " << lambda.degree << "\nsymbols: " << lambda.lambda.graph.size()
            << "\ncomponents: " << lambda.components.size() << "\nirreducible: " << (lambda.irreducible ? "yes" : "no")
            << "\nprojections onto X: " << (lambda.projections_onto ? "yes" : "no") << "\n";
    return 0;
}

int cmd_periodic_lifts(const RunConfig& c, std::ostream& out) {
    require_format(c, {"json", "table"});
    auto g = load_code(c).trimmed();
    auto degree = compute_degree(g);
    bool cto = is_constant_to_one(g);
    const auto& letters = g.recoding() ? g.recoding()->base_alphabet : g.x_symbols();
    Json orbits = Json::array();
    std::ostringstream table;
    table << "orbit\tperiod\tfiber\tlifts\tmultiplicities\tweights\n";
    for (const auto& y : enumerate_image_orbits(g, c.max_period)) {
        auto a = analyze_periodic_lifts(g, y);
        orbits.push_back(to_json(g, a));
        table << g.render_y(y.word) << '\t' << y.period() << '\t' << a.fiber.fiber_size << '\t';
        for (std::size_t i = 0; i < a.canonical_lift.size(); ++i)
            table << (i ? "," : "") << join_symbols(letters, a.canonical_lift[i].orbit.word);
        table << '\t';
        for (std::size_t i = 0; i < a.report.lifts.size(); ++i) table << (i ? "," : "") << a.report.lifts[i].multiplicity;
        table << '\t';
        for (std::size_t i = 0; i < a.canonical_lift.size(); ++i) table << (i ? "," : "") << to_string(a.canonical_lift[i].weight);
        table << '\n';
    }
    if (c.format == "table") {
        out << "degree: " << *degree.degree << "  constant-to-one: " << (cto ? "yes" : "no") << "\n" << table.str();
        return 0;
    }
    Json j;
    j["degree"] = *degree.degree;
    j["constant_to_one"] = cto;
    j["max_period"] = c.max_period;
    j["orbits"] = orbits;
    emit(j, out);
    return 0;
}

int cmd_lift_mc(const RunConfig& c, std::ostream& out) {
    require_format(c, {"json", "table"});
    if (c.measure_path.empty()) throw Error(ErrorKind::InvalidInput, "lift-mc needs --measure");
    auto g = load_code(c).trimmed();
    auto m = measure_from_json(read_json_file(c.measure_path));
    LiftReport r;
    if (c.measure_on == "x") r = classify_lifts_monte_carlo(g, m, mc_params(c));
    else if (c.measure_on == "y") r = classify_image_lifts_monte_carlo(g, m, mc_params(c));
    else throw Error(ErrorKind::InvalidInput, "--measure-on must be x or y");
    if (c.format == "json") emit(to_json(r), out);
    else lift_table(r, out);
    return 0;
}

int cmd_ca(const RunConfig& c, std::ostream& out) {
    require_format(c, {"json", "table"});
    if (c.family.empty() || c.modulus == 0 || c.vector.empty())
        throw Error(ErrorKind::InvalidInput, "ca needs --family, --modulus and --vector");
    auto family = parse_family(c.family);
    auto alpha = rationals_from_text(c.vector);
    LinearCACode code{c.modulus, family};
    Json j;
    j["family"] = to_string(family);
    j["modulus"] = c.modulus;
    std::ostringstream table;
    std::optional<CALiftAnalysis> exact;
    try {
        exact = family == CAFamily::Difference ? difference_lift_analysis(c.modulus, alpha)
                                               : sum_code_lift_analysis(alpha, c.modulus);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::HypothesisNotMet) {
            // Outside the theorem: fall back to the generic estimator.
            BernoulliMeasure mu(code.alphabet(), alpha);
            auto r = classify_lifts_monte_carlo(code.graph(), mu, mc_params(c));
            r.warnings.insert(r.warnings.begin(), std::string("exact analyzer refused (") + e.what() +
                                                      "); reporting the Monte-Carlo estimate");
            j["exact"] = nullptr;
            j["monte_carlo"] = to_json(r);
            if (c.format == "json") emit(j, out);
            else lift_table(r, out);
            return 0;
        }
        auto point = std::find(alpha.begin(), alpha.end(), Rational(1));
        if (e.kind() == ErrorKind::NotFullySupported && point != alpha.end()) {
            // A point mass: its image is a periodic point, handled exactly.
            auto k = static_cast<int>(point - alpha.begin());
            auto g = code.graph();
            auto y = code.apply(Word{k, k});
            auto a = analyze_periodic_lifts(g, PeriodicOrbit{y});
            a.report.warnings.push_back(std::string("exact analyzer refused (") + e.what() +
                                        "); the measure is a point mass, analyzed as a periodic orbit");
            j["exact"] = nullptr;
            j["periodic"] = to_json(g, a);
            j["periodic_report"] = to_json(a.report);
            if (c.format == "json") emit(j, out);
            else lift_table(a.report, out);
            return 0;
        }
        throw;
    }
    j["exact"] = to_json(*exact);
    std::optional<CrossValidation> cv;
    if (c.cross_validate) {
        cv = cross_validate(*exact, mc_params(c));
        j["cross_validation"] = to_json(*cv);
    }
    if (c.format == "json") {
        emit(j, out);
    } else {
        lift_table(exact->report, out);
        for (const auto& w : exact->witnesses)
            out << "distinct: " << exact->report.lifts[w.first].description << " vs "
                << exact->report.lifts[w.second].description << " on "
                << join_symbols(exact->mu.alphabet(), w.comparison.witness) << ": " << to_string(w.comparison.first_mass)
                << " vs " << to_string(w.comparison.second_mass) << "\n";
        if (cv) {
            out << "cross-validation: " << (cv->agree() ? "agree" : "DISAGREE") << "\n";
            lift_table(cv->monte_carlo, out);
            for (const auto& m : cv->mismatches) out << "mismatch: " << m << "\n";
        }
    }
    if (cv && !cv->agree()) throw Error(ErrorKind::Mismatch, "cross-validation found " + std::to_string(cv->mismatches.size()) + " disagreements");
    return 0;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.command == "analyze") return cmd_analyze(config, out);
        if (config.command == "degree") return cmd_degree(config, out);
        if (config.command == "joining") return cmd_joining(config, out);
        if (config.command == "periodic-lifts") return cmd_periodic_lifts(config, out);
        if (config.command == "lift-mc") return cmd_lift_mc(config, out);
        if (config.command == "ca") return cmd_ca(config, out);
        throw Error(ErrorKind::InvalidInput, "unknown command " + config.command);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return is_refusal(e.kind()) ? 2 : 1;
    } catch (const nlohmann::json::exception& e) {
        err << "error [InvalidInput]: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error [Internal]: " << e.what() << "\n";
        return 1;
    }
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite-to-one factor codes: degrees, degree joinings and lifts of invariant measures"};
    app.require_subcommand(1, 1);
    RunConfig config;
    auto common = [&](CLI::App* sub, bool takes_input) {
        if (takes_input) sub->add_option("input", config.inputs, "code or graph JSON")->required();
        sub->add_option("--format", config.format, "json, table or dot")->check(CLI::IsMember({"json", "table", "dot"}));
    };
    auto mc = [&](CLI::App* sub) {
        sub->add_option("--length", config.length, "sample length T");
        sub->add_option("--cyl-depth", config.depth, "cylinder depth L");
        sub->add_option("--tolerance", config.tolerance, "clustering tolerance (default 5/sqrt(T))");
        sub->add_option("--seed", config.seed, "sampler seed");
    };
    common(app.add_subcommand("analyze", "structure, entropies and finite-to-one verdict"), true);
    common(app.add_subcommand("degree", "degree with a magic-word certificate"), true);
    common(app.add_subcommand("joining", "topological degree joining"), true);
    auto* periodic = app.add_subcommand("periodic-lifts", "exact lifts of periodic measures");
    common(periodic, true);
    periodic->add_option("--max-period", config.max_period, "largest orbit period");
    auto* lift = app.add_subcommand("lift-mc", "Monte-Carlo lift classification");
    common(lift, true);
    mc(lift);
    lift->add_option("--measure", config.measure_path, "measure JSON")->required();
    lift->add_option("--measure-on", config.measure_on, "x: measure on the domain, pushed forward; y: measure on the image")
        ->check(CLI::IsMember({"x", "y"}));
    auto* ca = app.add_subcommand("ca", "linear cellular automaton examples");
    common(ca, false);
    mc(ca);
    ca->add_option("--family", config.family, "diff or sum")->required();
    ca->add_option("--modulus", config.modulus, "modulus N")->required();
    ca->add_option("--vector", config.vector, "Bernoulli probabilities, e.g. 1/8,3/8,1/8,3/8")->required();
    ca->add_flag("!--no-cross-validate", config.cross_validate, "skip the Monte-Carlo cross-check");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    config.command = app.get_subcommands().front()->get_name();
    return run(config, out, err);
}

}  // namespace fiberlift
