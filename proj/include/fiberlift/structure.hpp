#pragma once

#include <cstddef>
#include <vector>

#include "fiberlift/labeled_graph.hpp"

namespace fiberlift {

struct Component {
    std::vector<int> symbols;
    /// gcd of cycle lengths; 0 for a component carrying no cycle.
    int period = 0;
};

struct StructureReport {
    bool is_essential = false;
    std::vector<int> trimmed_symbols;  ///< symbols of the essential part, in input order
    std::vector<int> removed_symbols;
    std::vector<Component> components;  ///< SCCs of the essential part with a cycle, by least symbol
    bool is_irreducible = false;
};

/// Strongly connected components (Tarjan), each sorted, listed by least member.
std::vector<std::vector<int>> strongly_connected_components(const std::vector<std::vector<int>>& succ);

StructureReport analyze_graph(const LabeledGraph& g);

bool is_irreducible(const LabeledGraph& g);

/// Perron root of a non-negative integer matrix given by adjacency lists (repeated
/// entries count as multi-edges). Reducible input is handled component-wise.
double spectral_radius(const std::vector<std::vector<int>>& succ);

/// Topological entropy in nats of an essential irreducible graph; throws NotIrreducible.
double entropy(const LabeledGraph& g);

/// Orbits of least period ≤ max_period, each by its least primitive word, ordered by (period, word).
std::vector<PeriodicOrbit> enumerate_periodic_orbits(const LabeledGraph& g, int max_period);

}  // namespace fiberlift
