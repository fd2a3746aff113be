#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "fiberlift/labeled_graph.hpp"

namespace fiberlift {

using Rational = mpq_class;

/// Parses "p/q" or an integer; the result is canonicalized.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
/// n/d in canonical form.
Rational ratio(long n, long d);

class BernoulliMeasure {
public:
    BernoulliMeasure(std::vector<std::string> alphabet, std::vector<Rational> probabilities);

    const std::vector<std::string>& alphabet() const { return alphabet_; }
    const std::vector<Rational>& probabilities() const { return probabilities_; }

private:
    std::vector<std::string> alphabet_;
    std::vector<Rational> probabilities_;
};

/// Stationary Markov chain with exact rational transition matrix.
class MarkovMeasure {
public:
    /// When `stationary` is absent it is solved exactly; the chain must then have a
    /// unique stationary vector.
    MarkovMeasure(std::vector<std::string> states, std::vector<std::vector<Rational>> transition_matrix,
                  std::optional<std::vector<Rational>> stationary = std::nullopt);

    const std::vector<std::string>& alphabet() const { return states_; }
    const std::vector<std::vector<Rational>>& transition_matrix() const { return matrix_; }
    const std::vector<Rational>& stationary() const { return stationary_; }
    const Rational& probability(int from, int to) const {
        return matrix_[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)];
    }

private:
    std::vector<std::string> states_;
    std::vector<std::vector<Rational>> matrix_;
    std::vector<Rational> stationary_;
};

/// Uniform measure on the orbit of the periodic point orbit^∞.
class PeriodicMeasure {
public:
    PeriodicMeasure(std::vector<std::string> alphabet, Word orbit);

    const std::vector<std::string>& alphabet() const { return alphabet_; }
    const Word& orbit() const { return orbit_; }
    std::size_t period() const { return orbit_.size(); }

private:
    std::vector<std::string> alphabet_;
    Word orbit_;
};

using Measure = std::variant<BernoulliMeasure, MarkovMeasure, PeriodicMeasure>;

const std::vector<std::string>& alphabet(const Measure& m);
std::string describe(const Measure& m);

/// μ([w]_0), exact; zero for disallowed words or symbols outside the alphabet.
Rational cylinder_probability(const Measure& m, std::span<const int> word);

/// Any shift-invariant measure given by its cylinder function, e.g. a margin that
/// is not itself Markov.
struct CylinderMeasure {
    std::vector<std::string> alphabet;
    std::function<Rational(std::span<const int>)> mass;
    std::string description;
};

CylinderMeasure as_cylinder_measure(const Measure& m);

/// Image measure of m (on the base alphabet of g, or on its X-symbols when g is
/// not a recoding) evaluated on a cylinder of the label alphabet.
Rational pushforward_cylinder(const Measure& m, const LabeledGraph& g, std::span<const int> y_word);

/// Whether every positive-mass word of length block_length + 1 of m is a path of g.
bool supported_on(const Measure& m, const LabeledGraph& g);

/// Support of m on g: symbols and transitions of positive mass, trimmed.
LabeledGraph support_subgraph(const Measure& m, const LabeledGraph& g);

/// Counter-based generator: the i-th draw depends only on (seed, i).
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}
    std::uint64_t bits(std::uint64_t counter) const;
    /// Uniform in [0, 1).
    double uniform(std::uint64_t counter) const;

private:
    std::uint64_t seed_;
};

/// A path sampled from the stationary process, deterministic in the seed.
Word sample_path(const Measure& m, std::size_t length, std::uint64_t seed);

/// Whether the two-point rotation is a factor: the product chain with a parity
/// flip fails to be strongly connected on positive transitions. Throws NotErgodic.
bool has_two_point_factor(const MarkovMeasure& m);
bool has_two_point_factor(const BernoulliMeasure& m);
bool has_two_point_factor(const PeriodicMeasure& m);

struct MeasureComparison {
    bool equal = true;
    Word witness;
    Rational first_mass;
    Rational second_mass;
};

/// Exact comparison of all cylinders of length ≤ max_length, shortest then least witness first.
MeasureComparison compare_measures(const CylinderMeasure& a, const CylinderMeasure& b, int max_length);
MeasureComparison compare_measures(const Measure& a, const Measure& b, int max_length);

/// Cylinder counts of a sample for words of length 1..depth.
class EmpiricalDistribution {
public:
    EmpiricalDistribution(std::size_t alphabet_size, int depth);
    EmpiricalDistribution(std::size_t alphabet_size, int depth, std::span<const int> sample);

    std::size_t alphabet_size() const { return k_; }
    int depth() const { return depth_; }
    std::size_t sample_length() const { return length_; }
    std::uint64_t count(std::span<const int> word) const;
    double frequency(std::span<const int> word) const;
    /// Frequencies of all words of length 1..depth, length-major then lexicographic.
    std::vector<double> frequency_vector() const;

private:
    std::size_t k_;
    int depth_;
    std::size_t length_ = 0;
    std::vector<std::vector<std::uint64_t>> counts_;
};

/// All words of the given length over k letters in lexicographic order.
std::vector<Word> all_words(std::size_t k, int length);

}  // namespace fiberlift
