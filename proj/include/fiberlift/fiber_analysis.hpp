#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fiberlift/code_analysis.hpp"
#include "fiberlift/joining.hpp"
#include "fiberlift/measures.hpp"

namespace fiberlift {

enum class LiftMethod { Exact, MonteCarlo };

struct Lift {
    std::string description;
    int multiplicity = 1;
    /// Exact cylinder function when known.
    std::optional<CylinderMeasure> measure;
    /// Monte-Carlo only: Λ coordinates in the cluster and their mean cylinder
    /// frequencies (words of length 1..L, length-major, lexicographic).
    std::vector<int> coordinates;
    std::vector<double> frequencies;
};

struct MonteCarloParams {
    std::size_t length = 1000000;
    int depth = 3;
    std::optional<double> tolerance;  ///< defaults to 5 / sqrt(length)
    std::uint64_t seed = 0;

    double effective_tolerance() const;
};

struct MonteCarloDetails {
    MonteCarloParams params;
    double tolerance = 0.0;
    std::size_t burn_in = 0;
    std::size_t lambda_symbols = 0;
    std::vector<std::string> alphabet;  ///< letters the frequencies are written in
};

struct LiftReport {
    std::string base_measure;
    int degree = 0;
    LiftMethod method = LiftMethod::Exact;
    std::vector<Lift> lifts;
    std::optional<MonteCarloDetails> monte_carlo;
    std::vector<std::string> warnings;
};

struct CanonicalComponent {
    PeriodicOrbit orbit;  ///< in the base alphabet of the code
    Rational weight;
};

struct PeriodicLiftAnalysis {
    LiftReport report;
    PhasedFiberDecomposition fiber;
    std::vector<CanonicalComponent> canonical_lift;
    /// Per lift, mass of the diagonal under its relatively independent self-joining over ν.
    std::vector<Rational> diagonal_mass;
    bool canonical_ergodic = false;
    /// Canonical-lift cylinders agree computed as Σ weight·μ_i and as ∫ (fiber count)/d dν.
    bool canonical_cylinders_agree = false;
};

/// Exact lift structure over the CO-measure of y: the lifts are the CO-measures
/// of the lift orbits, each with multiplicity equal to its winding number.
PeriodicLiftAnalysis analyze_periodic_lifts(const LabeledGraph& g, const PeriodicOrbit& y);

/// Mass of the canonical lift of the CO-measure on y on a base-alphabet cylinder,
/// computed from the fiber counts over the orbit of y.
Rational canonical_lift_cylinder(const LabeledGraph& g, const PhasedFiberDecomposition& fiber, std::span<const int> word);

/// Estimates the lifts of ν = π_* μ, with μ given on the base alphabet of g (or
/// on its X-symbols when g is not a recoding), by clustering the coordinate
/// margins of a Λ-path over a ν-generic window.
LiftReport classify_lifts_monte_carlo(const LabeledGraph& g, const Measure& mu, const MonteCarloParams& params);
LiftReport classify_lifts_monte_carlo(const LabeledGraph& g, const DegreeJoiningGraph& lambda, const Measure& mu,
                                      const MonteCarloParams& params);

/// Same with ν given directly on the Y alphabet.
LiftReport classify_image_lifts_monte_carlo(const LabeledGraph& g, const Measure& nu, const MonteCarloParams& params);

/// Cylinder masses of m on all words of length 1..depth, in frequency-vector order.
std::vector<double> cylinder_vector(const CylinderMeasure& m, int depth);

/// Single-linkage clusters at L∞ distance ≤ tolerance, each sorted, ordered by least member.
std::vector<std::vector<int>> single_linkage(const std::vector<std::vector<double>>& points, double tolerance);

double linf_distance(const std::vector<double>& a, const std::vector<double>& b);

std::string to_string(LiftMethod m);

}  // namespace fiberlift
