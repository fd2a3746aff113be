#pragma once

#include <span>
#include <vector>

#include "fiberlift/code_analysis.hpp"
#include "fiberlift/labeled_graph.hpp"

namespace fiberlift {

/// A 1-step SFT whose symbols are equal-label tuples of X-symbols, with
/// componentwise transitions and the common label as its 1-block code.
struct TupleGraph {
    int arity = 0;
    LabeledGraph graph;  ///< symbols rendered "a|b|c"
    std::vector<Word> tuples;  ///< per symbol, the X-symbols in coordinate order

    int find_tuple(std::span<const int> tuple) const;
    /// The X-word followed by coordinate i along a tuple path.
    Word coordinate(std::span<const int> path, int i) const;
};

/// n-fold self fiber product over the code, trimmed to its essential part.
TupleGraph fiber_product(const LabeledGraph& g, int n);

struct DegreeJoiningGraph {
    int degree = 0;
    TupleGraph lambda;
    std::vector<std::vector<int>> components;  ///< SCCs of Λ carrying a cycle
    bool irreducible = false;
    bool projections_onto = false;
    bool onto_image = false;
};

/// Topological degree joining: d-tuples of pairwise distinct symbols with equal
/// labels, trimmed. Verifies that every coordinate projection covers X and that
/// the induced code maps onto the image of g (ProjectionNotOnto otherwise).
DegreeJoiningGraph degree_joining_graph(const LabeledGraph& g);
DegreeJoiningGraph degree_joining_graph(const LabeledGraph& g, int degree);

/// A Λ-word over the label window, extendable on both sides in Λ, choosing the
/// least viable symbol (coordinate-then-symbol order) at every step. Throws NoPath.
Word lambda_path_over(const DegreeJoiningGraph& lambda, std::span<const int> y_window);

struct PeriodicDegreeJoinings {
    PeriodicOrbit base_orbit;
    std::vector<LiftOrbit> joinings;  ///< Λ-orbits over the base orbit
    int tuple_points = 0;  ///< Λ-points over one base point: d! when the fiber is mutually separated
    bool permutation_related = false;
};

/// Periodic Λ-orbits over y, checking that any two are related by a coordinate
/// permutation. Requires the fiber of y to have exactly d points (always true
/// for constant-to-one codes); throws NotConstantToOne otherwise.
PeriodicDegreeJoinings enumerate_periodic_degree_joinings(const LabeledGraph& g, const DegreeJoiningGraph& lambda,
                                                          const PeriodicOrbit& y);

/// Apply a coordinate permutation to a Λ-symbol; -1 when the image is not a Λ-symbol.
int permute_symbol(const TupleGraph& t, int symbol, std::span<const int> permutation);

}  // namespace fiberlift
