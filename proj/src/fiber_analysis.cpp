#include "fiberlift/fiber_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "fiberlift/automaton.hpp"
#include "fiberlift/error.hpp"
#include "fiberlift/structure.hpp"

namespace fiberlift {

namespace {

const std::vector<std::string>& base_alphabet(const LabeledGraph& g) {
    return g.recoding() ? g.recoding()->base_alphabet : g.x_symbols();
}

/// Index in `to` of every name in `from`; -1 when absent.
std::vector<int> name_map(const std::vector<std::string>& from, const std::vector<std::string>& to) {
    std::vector<int> out;
    for (const auto& s : from) {
        auto it = std::find(to.begin(), to.end(), s);
        out.push_back(it == to.end() ? -1 : static_cast<int>(it - to.begin()));
    }
    return out;
}

/// Whether the base point of the x-path starting at `start` along `cycle` begins with `word`.
bool cylinder_hit(const LabeledGraph& g, const Word& cycle, std::size_t start, std::span<const int> word) {
    for (std::size_t j = 0; j < word.size(); ++j) {
        int x = cycle[(start + j) % cycle.size()];
        int letter = g.recoding() ? g.recoding()->base_symbol(x) : x;
        if (letter != word[j]) return false;
    }
    return true;
}

/// X-path over a sampled base word: window i of the sample becomes symbol i.
Word base_word_to_path(const LabeledGraph& g, const Word& base) {
    Word path;
    if (!g.recoding()) {
        path = base;
        if (!g.is_path(path)) throw Error(ErrorKind::Internal, "sample left the support of the code");
        return path;
    }
    const auto& rec = *g.recoding();
    const std::size_t k = rec.base_alphabet.size();
    const auto len = static_cast<std::size_t>(rec.block_length());
    std::size_t codes = 1;
    for (std::size_t i = 0; i < len; ++i) codes *= k;
    std::vector<int> index(codes, -1);
    for (std::size_t x = 0; x < rec.blocks.size(); ++x) {
        std::size_t c = 0;
        for (int l : rec.blocks[x]) c = c * k + static_cast<std::size_t>(l);
        index[c] = static_cast<int>(x);
    }
    path.reserve(base.size() - len + 1);
    for (std::size_t i = 0; i + len <= base.size(); ++i) {
        std::size_t c = 0;
        for (std::size_t j = 0; j < len; ++j) c = c * k + static_cast<std::size_t>(base[i + j]);
        if (index[c] < 0) throw Error(ErrorKind::Internal, "sampled block is not a symbol of the code");
        path.push_back(index[c]);
    }
    return path;
}

LiftReport cluster_lambda_path(const LabeledGraph& g, const DegreeJoiningGraph& lambda, const Word& y,
                               const MonteCarloParams& params, std::size_t burn) {
    Word lam = lambda_path_over(lambda, y);
    const int d = lambda.degree;
    const auto& letters = base_alphabet(g);
    std::vector<std::vector<double>> vectors;
    Word coord;
    coord.reserve(lam.size());
    for (int i = 0; i < d; ++i) {
        coord.clear();
        for (std::size_t t = burn; t + burn < lam.size(); ++t) {
            int x = lambda.lambda.tuples[static_cast<std::size_t>(lam[t])][static_cast<std::size_t>(i)];
            coord.push_back(g.recoding() ? g.recoding()->base_symbol(x) : x);
        }
        vectors.push_back(EmpiricalDistribution(letters.size(), params.depth, coord).frequency_vector());
    }
    const double tau = params.effective_tolerance();
    LiftReport report;
    report.degree = d;
    report.method = LiftMethod::MonteCarlo;
    for (const auto& cluster : single_linkage(vectors, tau)) {
        Lift lift;
        lift.multiplicity = static_cast<int>(cluster.size());
        lift.coordinates = cluster;
        lift.frequencies.assign(vectors.front().size(), 0.0);
        for (int c : cluster)
            for (std::size_t j = 0; j < lift.frequencies.size(); ++j)
                lift.frequencies[j] += vectors[static_cast<std::size_t>(c)][j];
        for (auto& f : lift.frequencies) f /= static_cast<double>(cluster.size());
        report.lifts.push_back(std::move(lift));
    }
    // Order independent of how Λ numbers its coordinates.
    std::sort(report.lifts.begin(), report.lifts.end(), [](const Lift& a, const Lift& b) {
        if (a.frequencies != b.frequencies) return a.frequencies > b.frequencies;
        return a.multiplicity < b.multiplicity;
    });
    for (std::size_t i = 0; i < report.lifts.size(); ++i) report.lifts[i].description = "cluster " + std::to_string(i);
    MonteCarloDetails details;
    details.params = params;
    details.tolerance = tau;
    details.burn_in = burn;
    details.lambda_symbols = lambda.lambda.graph.size();
    details.alphabet = letters;
    report.monte_carlo = details;
    return report;
}

}  // namespace

double MonteCarloParams::effective_tolerance() const {
    return tolerance ? *tolerance : 5.0 / std::sqrt(static_cast<double>(length));
}

std::string to_string(LiftMethod m) { return m == LiftMethod::Exact ? "exact" : "monte-carlo"; }

double linf_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double out = 0.0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) out = std::max(out, std::abs(a[i] - b[i]));
    return out;
}

std::vector<std::vector<int>> single_linkage(const std::vector<std::vector<double>>& points, double tolerance) {
    const std::size_t n = points.size();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
        return v;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (linf_distance(points[i], points[j]) <= tolerance) {
                int a = find(static_cast<int>(i)), b = find(static_cast<int>(j));
                if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
            }
    std::map<int, std::vector<int>> groups;
    for (std::size_t i = 0; i < n; ++i) groups[find(static_cast<int>(i))].push_back(static_cast<int>(i));
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    return out;
}

std::vector<double> cylinder_vector(const CylinderMeasure& m, int depth) {
    std::vector<double> out;
    for (int len = 1; len <= depth; ++len)
        for (const auto& w : all_words(m.alphabet.size(), len)) out.push_back(m.mass(w).get_d());
    return out;
}

Rational canonical_lift_cylinder(const LabeledGraph& g, const PhasedFiberDecomposition& fiber, std::span<const int> word) {
    const std::size_t p = fiber.base_orbit.period();
    const auto d = static_cast<long>(fiber.fiber_size);
    Rational total = 0;
    for (std::size_t r = 0; r < p; ++r) {
        // Fiber of the r-th point of the base orbit: positions ≡ r mod p of every lift.
        long hits = 0;
        for (const auto& lift : fiber.lift_orbits)
            for (std::size_t start = r; start < lift.aligned.size(); start += p)
                if (cylinder_hit(g, lift.aligned, start, word)) ++hits;
        total += ratio(hits, d);
    }
    return total / static_cast<long>(p);
}

PeriodicLiftAnalysis analyze_periodic_lifts(const LabeledGraph& g, const PeriodicOrbit& y) {
    PeriodicLiftAnalysis out;
    out.fiber = periodic_fiber(g, y);
    const auto& fiber = out.fiber;
    const int d = fiber.fiber_size;
    const auto& letters = base_alphabet(g);
    auto& report = out.report;
    report.base_measure = "periodic(" + g.render_y(fiber.base_orbit.word) + ")";
    report.degree = d;
    report.method = LiftMethod::Exact;

    std::vector<PeriodicMeasure> measures;
    for (const auto& lift : fiber.lift_orbits) {
        auto orbit = canonical_orbit(g.base_letters(lift.aligned));
        PeriodicMeasure m(letters, orbit.word);
        measures.push_back(m);
        Lift l;
        l.description = "periodic(" + join_symbols(letters, orbit.word) + ")";
        l.multiplicity = lift.winding;
        l.measure = as_cylinder_measure(m);
        report.lifts.push_back(std::move(l));
        out.canonical_lift.push_back({orbit, ratio(lift.winding, d)});

        // Relatively independent self-joining: over each image point the lift is
        // uniform on the orbit points above it; the diagonal keeps matching pairs.
        const std::size_t q = lift.aligned.size();
        std::map<Word, std::size_t> group_size;
        for (std::size_t r = 0; r < q; ++r) ++group_size[g.label_word(rotate(lift.aligned, r))];
        Rational diagonal = 0;
        for (const auto& [image, s] : group_size) {
            Rational image_mass = ratio(static_cast<long>(s), static_cast<long>(q));
            Rational conditional = ratio(1, static_cast<long>(s));
            diagonal += image_mass * static_cast<long>(s) * conditional * conditional;
        }
        out.diagonal_mass.push_back(diagonal);
    }
    out.canonical_ergodic = report.lifts.size() == 1;

    out.canonical_cylinders_agree = true;
    for (int len = 1; len <= 3 && out.canonical_cylinders_agree; ++len) {
        for (const auto& w : all_words(letters.size(), len)) {
            Rational mixed = 0;
            for (std::size_t i = 0; i < measures.size(); ++i)
                mixed += out.canonical_lift[i].weight * cylinder_probability(measures[i], w);
            if (mixed != canonical_lift_cylinder(g, fiber, w)) {
                out.canonical_cylinders_agree = false;
                break;
            }
        }
    }
    return out;
}

LiftReport classify_lifts_monte_carlo(const LabeledGraph& g, const Measure& mu, const MonteCarloParams& params) {
    compute_degree(g);
    return classify_lifts_monte_carlo(g, degree_joining_graph(g), mu, params);
}

LiftReport classify_lifts_monte_carlo(const LabeledGraph& g, const DegreeJoiningGraph& lambda, const Measure& mu,
                                      const MonteCarloParams& params) {
    if (params.length < 1) throw Error(ErrorKind::InvalidInput, "sample length must be positive");
    if (params.depth < 1) throw Error(ErrorKind::InvalidInput, "cylinder depth must be positive");
    if (!is_finite_to_one(g)) throw Error(ErrorKind::InfiniteToOne, "code is not finite-to-one");
    std::vector<std::string> warnings;
    auto support = support_subgraph(mu, g);
    if (!is_irreducible(support)) throw Error(ErrorKind::NotErgodic, "support of the measure is not irreducible");
    if (!language_contained(g, support)) {
        if (!is_constant_to_one(g))
            throw Error(ErrorKind::NotFullySupported,
                        "image measure is not fully supported and the code is not constant-to-one");
        warnings.push_back("image measure is not fully supported; proceeding since the code is constant-to-one");
    }

    const std::size_t burn = lambda.lambda.graph.size();
    const std::size_t n = params.length + 2 * burn;
    const std::size_t extra = g.recoding() ? static_cast<std::size_t>(g.recoding()->block_length() - 1) : 0;
    Word sample = sample_path(mu, n + extra, params.seed);
    auto to_letter = name_map(alphabet(mu), base_alphabet(g));
    if (std::find(to_letter.begin(), to_letter.end(), -1) != to_letter.end())
        throw Error(ErrorKind::InvalidInput, "measure alphabet differs from the alphabet of the code");
    for (auto& s : sample) s = to_letter[static_cast<std::size_t>(s)];
    Word y = g.label_word(base_word_to_path(g, sample));

    auto report = cluster_lambda_path(g, lambda, y, params, burn);
    report.base_measure = "pushforward of " + describe(mu);
    report.warnings = std::move(warnings);
    return report;
}

LiftReport classify_image_lifts_monte_carlo(const LabeledGraph& g, const Measure& nu, const MonteCarloParams& params) {
    if (params.length < 1) throw Error(ErrorKind::InvalidInput, "sample length must be positive");
    compute_degree(g);
    auto to_y = name_map(alphabet(nu), g.y_symbols());

    // Support of ν as an identity-labeled graph over its own alphabet.
    const auto k = static_cast<int>(alphabet(nu).size());
    std::vector<int> identity(static_cast<std::size_t>(k));
    std::iota(identity.begin(), identity.end(), 0);
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            Word two{a, b};
            if (cylinder_probability(nu, two) > 0) edges.emplace_back(a, b);
        }
    LabeledGraph support = LabeledGraph(alphabet(nu), edges, identity, alphabet(nu)).trimmed();
    for (int s : support.labels())
        if (to_y[static_cast<std::size_t>(s)] < 0)
            throw Error(ErrorKind::NotInImage, "measure charges a symbol outside the image alphabet");
    if (!is_irreducible(support)) throw Error(ErrorKind::NotErgodic, "support of the measure is not irreducible");
    if (!language_contained(support, g)) throw Error(ErrorKind::NotInImage, "measure charges words outside the image");
    std::vector<std::string> warnings;
    if (!language_contained(g, support)) {
        if (!is_constant_to_one(g))
            throw Error(ErrorKind::NotFullySupported, "measure is not fully supported and the code is not constant-to-one");
        warnings.push_back("measure is not fully supported; proceeding since the code is constant-to-one");
    }

    auto lambda = degree_joining_graph(g);
    const std::size_t burn = lambda.lambda.graph.size();
    Word y = sample_path(nu, params.length + 2 * burn, params.seed);
    for (auto& s : y) s = to_y[static_cast<std::size_t>(s)];
    auto report = cluster_lambda_path(g, lambda, y, params, burn);
    report.base_measure = describe(nu);
    report.warnings = std::move(warnings);
    return report;
}

}  // namespace fiberlift
