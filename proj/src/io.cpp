#include "fiberlift/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fiberlift/error.hpp"

namespace fiberlift {

namespace {

std::vector<std::string> string_list(const Json& j, const char* what) {
    if (!j.is_array()) throw Error(ErrorKind::InvalidInput, std::string(what) + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) throw Error(ErrorKind::InvalidInput, std::string(what) + " must be an array of strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::InvalidInput, std::string("missing field \"") + key + "\"");
    return j.at(key);
}

int index_of(const std::vector<std::string>& alphabet, const std::string& s, const char* what) {
    auto it = std::find(alphabet.begin(), alphabet.end(), s);
    if (it == alphabet.end()) throw Error(ErrorKind::InvalidInput, std::string("unknown ") + what + " \"" + s + "\"");
    return static_cast<int>(it - alphabet.begin());
}

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw Error(ErrorKind::InvalidInput, "probabilities must be \"p/q\" strings or integers");
}

std::vector<Rational> rational_list(const Json& j) {
    if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "expected an array of rationals");
    std::vector<Rational> out;
    for (const auto& e : j) out.push_back(rational_from_json(e));
    return out;
}

Word block_key(const std::string& key, const std::vector<std::string>& alphabet) {
    bool single = std::all_of(alphabet.begin(), alphabet.end(), [](const std::string& s) { return s.size() == 1; });
    Word w;
    if (single) {
        for (char c : key) w.push_back(index_of(alphabet, std::string(1, c), "block letter"));
        return w;
    }
    std::stringstream in(key);
    std::string part;
    while (std::getline(in, part, '.')) w.push_back(index_of(alphabet, part, "block letter"));
    return w;
}

Json strings(const std::vector<std::string>& alphabet, std::span<const int> word) {
    Json out = Json::array();
    for (int s : word) out.push_back(alphabet[static_cast<std::size_t>(s)]);
    return out;
}

Json lift_json(const Lift& l) {
    Json j;
    j["description"] = l.description;
    j["multiplicity"] = l.multiplicity;
    if (!l.coordinates.empty()) j["coordinates"] = l.coordinates;
    if (!l.frequencies.empty()) {
        Json f = Json::array();
        for (double x : l.frequencies) f.push_back(stable_real(x));
        j["frequencies"] = f;
    }
    return j;
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

double stable_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

std::vector<Rational> rationals_from_text(const std::string& comma_separated) {
    std::vector<Rational> out;
    std::stringstream in(comma_separated);
    std::string part;
    while (std::getline(in, part, ',')) out.push_back(parse_rational(part));
    if (out.empty()) throw Error(ErrorKind::InvalidInput, "empty probability vector");
    return out;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot read " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::InvalidInput, path + ": " + e.what());
    }
}

LabeledGraph graph_from_json(const Json& j) {
    auto xs = string_list(field(j, "x_symbols"), "x_symbols");
    std::vector<std::pair<std::string, std::string>> transitions;
    for (const auto& t : field(j, "transitions")) {
        auto pair = string_list(t, "transition");
        if (pair.size() != 2) throw Error(ErrorKind::InvalidInput, "each transition must be a pair");
        transitions.emplace_back(pair[0], pair[1]);
    }
    const auto& label = field(j, "label");
    if (!label.is_object()) throw Error(ErrorKind::InvalidInput, "label must map symbols to strings");
    std::vector<std::string> labels;
    for (const auto& x : xs) {
        if (!label.contains(x) || !label.at(x).is_string())
            throw Error(ErrorKind::InvalidInput, "label undefined on \"" + x + "\"");
        labels.push_back(label.at(x).get<std::string>());
    }
    std::optional<std::vector<std::string>> ys;
    if (j.contains("y_symbols")) ys = string_list(j.at("y_symbols"), "y_symbols");
    return LabeledGraph::from_names(xs, transitions, labels, ys);
}

SlidingBlockCode code_from_json(const Json& j) {
    SlidingBlockCode c;
    c.memory = field(j, "memory").get<int>();
    c.anticipation = field(j, "anticipation").get<int>();
    c.alphabet = string_list(field(j, "alphabet"), "alphabet");
    if (j.contains("transitions")) {
        std::vector<std::pair<int, int>> t;
        for (const auto& e : j.at("transitions")) {
            auto pair = string_list(e, "transition");
            if (pair.size() != 2) throw Error(ErrorKind::InvalidInput, "each transition must be a pair");
            t.emplace_back(index_of(c.alphabet, pair[0], "symbol"), index_of(c.alphabet, pair[1], "symbol"));
        }
        c.transitions = t;
    }
    const auto& map = field(j, "block_map");
    if (!map.is_object()) throw Error(ErrorKind::InvalidInput, "block_map must be an object");
    if (j.contains("y_alphabet")) c.y_symbols = string_list(j.at("y_alphabet"), "y_alphabet");
    else
        for (const auto& [key, value] : map.items()) {
            if (!value.is_string()) throw Error(ErrorKind::InvalidInput, "block images must be strings");
            if (std::find(c.y_symbols.begin(), c.y_symbols.end(), value.get<std::string>()) == c.y_symbols.end())
                c.y_symbols.push_back(value.get<std::string>());
        }
    for (const auto& [key, value] : map.items()) {
        Word w = block_key(key, c.alphabet);
        if (static_cast<int>(w.size()) != c.window())
            throw Error(ErrorKind::InvalidInput, "block \"" + key + "\" does not have length " + std::to_string(c.window()));
        c.block_map[w] = index_of(c.y_symbols, value.get<std::string>(), "image symbol");
    }
    return c;
}

LabeledGraph code_graph_from_json(const Json& j) {
    if (j.is_object() && j.contains("block_map")) return recode_to_one_block(code_from_json(j));
    return graph_from_json(j);
}

Measure measure_from_json(const Json& j) {
    auto type = field(j, "type").get<std::string>();
    if (type == "bernoulli")
        return BernoulliMeasure(string_list(field(j, "alphabet"), "alphabet"), rational_list(field(j, "probabilities")));
    if (type == "markov") {
        std::vector<std::vector<Rational>> rows;
        for (const auto& r : field(j, "matrix")) rows.push_back(rational_list(r));
        std::optional<std::vector<Rational>> stationary;
        if (j.contains("stationary")) stationary = rational_list(j.at("stationary"));
        return MarkovMeasure(string_list(field(j, "states"), "states"), rows, stationary);
    }
    if (type == "periodic") {
        auto alphabet = string_list(field(j, "alphabet"), "alphabet");
        Word orbit;
        for (const auto& s : string_list(field(j, "orbit"), "orbit")) orbit.push_back(index_of(alphabet, s, "orbit symbol"));
        return PeriodicMeasure(alphabet, orbit);
    }
    throw Error(ErrorKind::InvalidInput, "unknown measure type \"" + type + "\"");
}

Json to_json(const LabeledGraph& g) {
    Json j;
    j["x_symbols"] = g.x_symbols();
    Json t = Json::array();
    for (auto [a, b] : g.transitions()) t.push_back({g.x_name(a), g.x_name(b)});
    j["transitions"] = t;
    Json label = Json::object();
    for (std::size_t x = 0; x < g.size(); ++x) label[g.x_name(static_cast<int>(x))] = g.y_name(g.label(static_cast<int>(x)));
    j["label"] = label;
    j["y_symbols"] = g.y_symbols();
    return j;
}

Json to_json(const LabeledGraph& g, const StructureReport& r) {
    Json j;
    j["symbols"] = g.size();
    j["transitions"] = g.transition_count();
    j["is_essential"] = r.is_essential;
    j["trimmed_symbols"] = strings(g.x_symbols(), r.trimmed_symbols);
    j["removed_symbols"] = strings(g.x_symbols(), r.removed_symbols);
    Json comps = Json::array();
    for (const auto& c : r.components) comps.push_back({{"symbols", strings(g.x_symbols(), c.symbols)}, {"period", c.period}});
    j["components"] = comps;
    j["is_irreducible"] = r.is_irreducible;
    return j;
}

Json to_json(const LabeledGraph& g, const DegreeReport& r) {
    Json j;
    j["finite_to_one"] = r.finite_to_one;
    if (r.degree) {
        j["degree"] = *r.degree;
        j["magic_word"] = g.render_y(r.magic_word);
        j["magic_position"] = r.magic_position;
    } else {
        j["degree"] = nullptr;
    }
    j["entropy_x"] = stable_real(r.entropy_x);
    j["entropy_y"] = stable_real(r.entropy_y);
    return j;
}

Json to_json(const DegreeJoiningGraph& lambda) {
    Json j;
    j["degree"] = lambda.degree;
    j["symbols"] = lambda.lambda.graph.size();
    j["irreducible"] = lambda.irreducible;
    j["components"] = lambda.components.size();
    j["projections_onto"] = lambda.projections_onto;
    j["onto_image"] = lambda.onto_image;
    j["graph"] = to_json(lambda.lambda.graph);
    return j;
}

Json to_json(const LiftReport& r) {
    Json j;
    j["base_measure"] = r.base_measure;
    j["degree"] = r.degree;
    j["method"] = to_string(r.method);
    Json lifts = Json::array();
    for (const auto& l : r.lifts) lifts.push_back(lift_json(l));
    j["lifts"] = lifts;
    if (r.monte_carlo) {
        const auto& mc = *r.monte_carlo;
        j["monte_carlo"] = {{"length", mc.params.length},
                            {"cylinder_depth", mc.params.depth},
                            {"tolerance", stable_real(mc.tolerance)},
                            {"seed", mc.params.seed},
                            {"burn_in", mc.burn_in},
                            {"lambda_symbols", mc.lambda_symbols},
                            {"alphabet", mc.alphabet},
                            {"note", "statistical estimate: clusters of empirical coordinate margins"}};
    }
    j["warnings"] = r.warnings;
    return j;
}

Json to_json(const LabeledGraph& g, const PeriodicLiftAnalysis& a) {
    const auto& letters = g.recoding() ? g.recoding()->base_alphabet : g.x_symbols();
    Json j;
    j["orbit"] = g.render_y(a.fiber.base_orbit.word);
    j["period"] = a.fiber.base_orbit.period();
    j["fiber_size"] = a.fiber.fiber_size;
    Json lifts = Json::array();
    for (std::size_t i = 0; i < a.fiber.lift_orbits.size(); ++i) {
        const auto& comp = a.canonical_lift[i];
        lifts.push_back({{"orbit", join_symbols(letters, comp.orbit.word)},
                         {"period", comp.orbit.period()},
                         {"multiplicity", a.fiber.lift_orbits[i].winding},
                         {"canonical_weight", to_string(comp.weight)},
                         {"diagonal_mass", to_string(a.diagonal_mass[i])}});
    }
    j["lifts"] = lifts;
    j["canonical_lift_ergodic"] = a.canonical_ergodic;
    j["canonical_cylinders_agree"] = a.canonical_cylinders_agree;
    return j;
}

Json to_json(const MeasureComparison& c, const std::vector<std::string>& alphabet) {
    Json j;
    j["equal"] = c.equal;
    if (!c.equal) {
        j["witness"] = join_symbols(alphabet, c.witness);
        j["first_mass"] = to_string(c.first_mass);
        j["second_mass"] = to_string(c.second_mass);
    }
    return j;
}

Json to_json(const CALiftAnalysis& a) {
    Json j;
    j["family"] = to_string(a.code.family);
    j["modulus"] = a.code.modulus;
    j["report"] = to_json(a.report);
    Json w = Json::array();
    for (const auto& d : a.witnesses) {
        Json e = to_json(d.comparison, a.mu.alphabet());
        e["first"] = a.report.lifts[d.first].description;
        e["second"] = a.report.lifts[d.second].description;
        w.push_back(e);
    }
    j["distinctness"] = w;
    if (a.code.family == CAFamily::Difference) j["least_period"] = a.least_period;
    if (!a.separating_masses.empty()) {
        Json s = Json::array();
        for (const auto& m : a.separating_masses) s.push_back(to_string(m));
        j["separating_masses"] = s;
    }
    j["theorem_backed"] = a.theorem_backed;
    return j;
}

Json to_json(const CrossValidation& c) {
    Json j;
    j["generic_degree"] = c.degree.degree ? Json(*c.degree.degree) : Json(nullptr);
    j["monte_carlo"] = to_json(c.monte_carlo);
    Json matches = Json::array();
    for (std::size_t i = 0; i < c.matched_lift.size(); ++i) {
        int m = c.matched_lift[i];
        matches.push_back({{"cluster", c.monte_carlo.lifts[i].description},
                           {"lift", m >= 0 ? Json(c.exact.report.lifts[static_cast<std::size_t>(m)].description) : Json(nullptr)},
                           {"margin_gap", stable_real(c.margin_gap[i])}});
    }
    j["matches"] = matches;
    j["agree"] = c.agree();
    j["mismatches"] = c.mismatches;
    return j;
}

std::string to_dot(const LabeledGraph& g, const std::string& name) {
    std::ostringstream os;
    os << "digraph \"" << dot_escape(name) << "\" {\n";
    for (std::size_t x = 0; x < g.size(); ++x) {
        auto xi = static_cast<int>(x);
        os << "  n" << x << " [label=\"" << dot_escape(g.x_name(xi)) << " / " << dot_escape(g.y_name(g.label(xi)))
           << "\"];\n";
    }
    for (auto [a, b] : g.transitions()) os << "  n" << a << " -> n" << b << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace fiberlift
