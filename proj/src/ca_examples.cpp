#include "fiberlift/ca_examples.hpp"

#include <algorithm>
#include <limits>

#include "fiberlift/error.hpp"
#include "fiberlift/joining.hpp"

namespace fiberlift {

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

std::vector<std::string> digits(int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
}

std::string vector_text(const std::vector<Rational>& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + to_string(v[i]);
    return out + ")";
}

/// Pairwise witnesses; throws Internal when two lifts agree up to max_length.
std::vector<DistinctnessWitness> certify_distinct(const std::vector<CylinderMeasure>& lifts, int max_length) {
    std::vector<DistinctnessWitness> out;
    for (std::size_t i = 0; i < lifts.size(); ++i)
        for (std::size_t j = i + 1; j < lifts.size(); ++j) {
            auto cmp = compare_measures(lifts[i], lifts[j], max_length);
            if (cmp.equal)
                throw Error(ErrorKind::Internal, lifts[i].description + " and " + lifts[j].description +
                                                     " agree on all cylinders up to length " + std::to_string(max_length));
            out.push_back({i, j, cmp});
        }
    return out;
}

Rational mass_of(const CylinderMeasure& m, std::initializer_list<int> symbols) {
    Rational total = 0;
    for (int s : symbols) {
        Word w{s};
        total += m.mass(w);
    }
    return total;
}

}  // namespace

std::string to_string(CAFamily f) { return f == CAFamily::Difference ? "diff" : "sum"; }

CAFamily parse_family(const std::string& name) {
    if (name == "diff" || name == "difference") return CAFamily::Difference;
    if (name == "sum") return CAFamily::Sum;
    throw Error(ErrorKind::InvalidInput, "unknown family " + name + " (expected diff or sum)");
}

std::vector<std::string> LinearCACode::alphabet() const { return digits(modulus); }

SlidingBlockCode LinearCACode::sliding_block_code() const {
    if (modulus < 2) throw Error(ErrorKind::InvalidInput, "modulus must be at least 2");
    SlidingBlockCode c;
    c.memory = 0;
    c.anticipation = 1;
    c.alphabet = alphabet();
    c.y_symbols = alphabet();
    for (int a = 0; a < modulus; ++a)
        for (int b = 0; b < modulus; ++b)
            c.block_map[Word{a, b}] = family == CAFamily::Difference ? mod(b - a, modulus) : mod(a + b, modulus);
    return c;
}

LabeledGraph LinearCACode::graph() const { return recode_to_one_block(sliding_block_code()); }

Word LinearCACode::apply(std::span<const int> x) const {
    Word y;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        y.push_back(family == CAFamily::Difference ? mod(x[i + 1] - x[i], modulus) : mod(x[i + 1] + x[i], modulus));
    return y;
}

BernoulliMeasure add_constant(const BernoulliMeasure& m, int k) {
    const auto n = static_cast<int>(m.probabilities().size());
    std::vector<Rational> p(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) p[static_cast<std::size_t>(a)] = m.probabilities()[static_cast<std::size_t>(mod(a - k, n))];
    return BernoulliMeasure(m.alphabet(), p);
}

CylinderMeasure alternating_margin(const BernoulliMeasure& m, int c) {
    const auto n = static_cast<int>(m.probabilities().size());
    Measure base = m;
    auto mass = [base, c, n](std::span<const int> w) {
        Word plus(w.begin(), w.end()), minus(w.begin(), w.end());
        for (std::size_t j = 0; j < w.size(); ++j) {
            int sign = j % 2 == 0 ? 1 : -1;
            plus[j] = mod(w[j] - c * sign, n);
            minus[j] = mod(w[j] + c * sign, n);
        }
        Rational r = cylinder_probability(base, plus) + cylinder_probability(base, minus);
        return Rational(r / 2);
    };
    return CylinderMeasure{m.alphabet(), mass, "margin of x+" + std::to_string(c) + "η"};
}

CALiftAnalysis difference_lift_analysis(int modulus, const std::vector<Rational>& alpha) {
    LinearCACode code{modulus, CAFamily::Difference};
    if (alpha.size() != static_cast<std::size_t>(modulus))
        throw Error(ErrorKind::InvalidInput, "probability vector must have length " + std::to_string(modulus));
    BernoulliMeasure mu(code.alphabet(), alpha);
    CALiftAnalysis out{code, mu, {}, {}, 0, {}, true};
    auto& report = out.report;
    report.base_measure = "pushforward of bernoulli" + vector_text(alpha);
    report.degree = modulus;
    report.method = LiftMethod::Exact;
    if (std::any_of(alpha.begin(), alpha.end(), [](const Rational& a) { return a == 0; }))
        report.warnings.push_back("probability vector has zero entries; the code is constant-to-one so the analysis still applies");

    int period = modulus;
    for (int l = 1; l < modulus; ++l) {
        if (modulus % l != 0) continue;
        bool periodic = true;
        for (int i = 0; i < modulus && periodic; ++i)
            periodic = alpha[static_cast<std::size_t>(i)] == alpha[static_cast<std::size_t>((i + l) % modulus)];
        if (periodic) {
            period = l;
            break;
        }
    }
    out.least_period = period;
    std::vector<CylinderMeasure> measures;
    for (int k = 0; k < period; ++k) {
        auto shifted = add_constant(mu, k);
        Lift lift;
        lift.description = "s^" + std::to_string(k) + " bernoulli" + vector_text(shifted.probabilities());
        lift.multiplicity = modulus / period;
        lift.measure = as_cylinder_measure(shifted);
        lift.measure->description = lift.description;
        measures.push_back(*lift.measure);
        report.lifts.push_back(std::move(lift));
    }
    out.witnesses = certify_distinct(measures, 1);
    return out;
}

CALiftAnalysis sum_code_lift_analysis(const std::vector<Rational>& alpha, int modulus) {
    LinearCACode code{modulus, CAFamily::Sum};
    if (alpha.size() != static_cast<std::size_t>(modulus))
        throw Error(ErrorKind::InvalidInput, "probability vector must have length " + std::to_string(modulus));
    BernoulliMeasure mu(code.alphabet(), alpha);
    if (std::any_of(alpha.begin(), alpha.end(), [](const Rational& a) { return a == 0; }))
        throw Error(ErrorKind::NotFullySupported, "probability vector has zero entries");
    if (has_two_point_factor(mu))
        throw Error(ErrorKind::HypothesisNotMet, "the two-point rotation is a factor of the measure");
    CALiftAnalysis out{code, mu, {}, {}, 0, {}, modulus == 5};
    auto& report = out.report;
    report.base_measure = "pushforward of bernoulli" + vector_text(alpha);
    report.degree = modulus;
    report.method = LiftMethod::Exact;

    std::vector<CylinderMeasure> measures;
    if (modulus == 5) {
        if (alpha[0] <= Rational(1, 2))
            throw Error(ErrorKind::HypothesisNotMet, "requires alpha_0 > 1/2, got " + to_string(alpha[0]));
        const char* names[] = {"mu", "mu'", "mu''"};
        for (int c = 0; c < 3; ++c) {
            auto m = alternating_margin(mu, c);
            m.description = names[c];
            measures.push_back(m);
            report.lifts.push_back({names[c], c == 0 ? 1 : 2, m, {}, {}});
        }
        out.separating_masses = {mass_of(measures[0], {0}), mass_of(measures[1], {1, 4}), mass_of(measures[2], {2, 3})};
        for (const auto& s : out.separating_masses)
            if (s <= Rational(1, 2)) throw Error(ErrorKind::Internal, "separating mass not above 1/2");
        out.witnesses = certify_distinct(measures, 3);
        return out;
    }

    // No theorem for other moduli: group the margins by exact comparison.
    report.warnings.push_back("modulus " + std::to_string(modulus) +
                              ": lifts grouped by exact cylinder comparison up to length 4 without a theorem-level claim");
    std::vector<int> counts;
    for (int c = 0; c < modulus; ++c) {
        auto m = alternating_margin(mu, c);
        m.description = "mu_" + std::to_string(c);
        bool placed = false;
        for (std::size_t i = 0; i < measures.size() && !placed; ++i)
            if (compare_measures(measures[i], m, 4).equal) {
                ++counts[i];
                placed = true;
            }
        if (!placed) {
            measures.push_back(m);
            counts.push_back(1);
        }
    }
    for (std::size_t i = 0; i < measures.size(); ++i)
        report.lifts.push_back({measures[i].description, counts[i], measures[i], {}, {}});
    out.witnesses = certify_distinct(measures, 4);
    return out;
}

CrossValidation cross_validate(const CALiftAnalysis& exact, const MonteCarloParams& params, double margin_tolerance) {
    CrossValidation out{exact, {}, {}, {}, {}, {}};
    auto g = exact.code.graph();
    out.degree = compute_degree(g);
    if (*out.degree.degree != exact.report.degree)
        out.mismatches.push_back("degree: generic " + std::to_string(*out.degree.degree) + ", exact " +
                                 std::to_string(exact.report.degree));
    auto lambda = degree_joining_graph(g, *out.degree.degree);
    out.monte_carlo = classify_lifts_monte_carlo(g, lambda, exact.mu, params);

    const auto& clusters = out.monte_carlo.lifts;
    const auto& lifts = exact.report.lifts;
    if (clusters.size() != lifts.size())
        out.mismatches.push_back("lift count: monte-carlo " + std::to_string(clusters.size()) + ", exact " +
                                 std::to_string(lifts.size()));
    auto sizes = [](const std::vector<Lift>& v) {
        std::vector<int> m;
        for (const auto& l : v) m.push_back(l.multiplicity);
        std::sort(m.begin(), m.end());
        return m;
    };
    if (sizes(clusters) != sizes(lifts)) out.mismatches.push_back("multiplicity multisets differ");

    std::vector<std::vector<double>> exact_vectors;
    for (const auto& l : lifts) exact_vectors.push_back(cylinder_vector(*l.measure, params.depth));
    std::vector<int> used(lifts.size(), 0);
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        int best = -1;
        double gap = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < lifts.size(); ++i) {
            double dist = linf_distance(clusters[c].frequencies, exact_vectors[i]);
            if (dist < gap) {
                gap = dist;
                best = static_cast<int>(i);
            }
        }
        out.matched_lift.push_back(best);
        out.margin_gap.push_back(gap);
        if (best < 0) continue;
        ++used[static_cast<std::size_t>(best)];
        const auto& lift = lifts[static_cast<std::size_t>(best)];
        if (gap > margin_tolerance)
            out.mismatches.push_back(clusters[c].description + ": margin gap " + std::to_string(gap) + " to " +
                                     lift.description + " exceeds " + std::to_string(margin_tolerance));
        if (clusters[c].multiplicity != lift.multiplicity)
            out.mismatches.push_back(clusters[c].description + ": multiplicity " + std::to_string(clusters[c].multiplicity) +
                                     ", matched " + lift.description + " has " + std::to_string(lift.multiplicity));
    }
    for (std::size_t i = 0; i < lifts.size(); ++i)
        if (used[i] != 1)
            out.mismatches.push_back(lifts[i].description + " matched by " + std::to_string(used[i]) + " clusters");
    return out;
}

}  // namespace fiberlift
