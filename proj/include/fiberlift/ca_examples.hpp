#pragma once

#include <string>
#include <vector>

#include "fiberlift/fiber_analysis.hpp"
#include "fiberlift/measures.hpp"
#include "fiberlift/recode.hpp"

namespace fiberlift {

enum class CAFamily { Difference, Sum };

std::string to_string(CAFamily f);
CAFamily parse_family(const std::string& name);

/// x ↦ (x_{i+1} − x_i) or (x_{i+1} + x_i) mod N on the full N-shift.
struct LinearCACode {
    int modulus = 2;
    CAFamily family = CAFamily::Difference;

    std::vector<std::string> alphabet() const;
    SlidingBlockCode sliding_block_code() const;
    LabeledGraph graph() const;
    /// Image of a base word (one symbol shorter).
    Word apply(std::span<const int> x) const;
};

/// s^k μ: the Bernoulli measure with probabilities shifted by adding k mod N to symbols.
BernoulliMeasure add_constant(const BernoulliMeasure& m, int k);

/// μ_c([w]) = ½(μ[w − c·η] + μ[w − c·η′]) where η, η′ are the two phases of the
/// alternating ±1 sequence; the margin of x + c·η under μ ⊗ (CO-measure of η).
CylinderMeasure alternating_margin(const BernoulliMeasure& m, int c);

struct DistinctnessWitness {
    std::size_t first = 0;
    std::size_t second = 0;
    MeasureComparison comparison;
};

struct CALiftAnalysis {
    LinearCACode code;
    BernoulliMeasure mu;
    LiftReport report;
    /// One witness per pair of reported lifts, certifying they differ.
    std::vector<DistinctnessWitness> witnesses;
    /// Difference family: least cyclic period of α.
    int least_period = 0;
    /// Sum family with N = 5: μ(P), μ′(P′), μ″(P″).
    std::vector<Rational> separating_masses;
    /// Whether the lift count is backed by a theorem rather than only by exact comparison.
    bool theorem_backed = false;
};

/// Lifts {s^k μ_α : k < L} with multiplicity N/L each, L the least cyclic period of α.
CALiftAnalysis difference_lift_analysis(int modulus, const std::vector<Rational>& alpha);

/// Lifts μ, μ′, μ″ with multiplicities 1, 2, 2 for N = 5 under α₀ > 1/2; for
/// other N the margins μ_c are grouped by exact comparison without a theorem claim.
/// Throws NotFullySupported on a zero entry and HypothesisNotMet when α₀ ≤ 1/2 (N = 5).
CALiftAnalysis sum_code_lift_analysis(const std::vector<Rational>& alpha, int modulus = 5);

struct CrossValidation {
    CALiftAnalysis exact;
    DegreeReport degree;
    LiftReport monte_carlo;
    /// For each Monte-Carlo cluster, the exact lift it was matched to and the L∞ gap.
    std::vector<int> matched_lift;
    std::vector<double> margin_gap;
    std::vector<std::string> mismatches;

    bool agree() const { return mismatches.empty(); }
};

/// Runs degree, Λ and Monte-Carlo classification on the code and compares with
/// the exact analysis: degree, lift count, multiplicities, and margins within
/// `margin_tolerance` at the Monte-Carlo cylinder depth.
CrossValidation cross_validate(const CALiftAnalysis& exact, const MonteCarloParams& params,
                               double margin_tolerance = 0.01);

}  // namespace fiberlift
