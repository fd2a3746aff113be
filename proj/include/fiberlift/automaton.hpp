#pragma once

#include <span>
#include <string>
#include <vector>

#include "fiberlift/labeled_graph.hpp"
#include "fiberlift/symbol_set.hpp"

namespace fiberlift {

/// Deterministic edge-labeled presentation of the label language of a graph,
/// obtained by the subset construction. State 0 is the full symbol set.
struct SubsetAutomaton {
    std::vector<SymbolSet> states;
    /// transitions[s][y] is the target state, or -1 when y cannot be read.
    std::vector<std::vector<int>> transitions;
    std::vector<std::string> y_symbols;

    std::size_t size() const { return states.size(); }
    /// Whether the word is a label word of the source graph.
    bool accepts(std::span<const int> y_word) const;
    /// States lying on bi-infinite paths; these carry the image shift.
    std::vector<int> essential_states() const;
    /// Entropy (nats) of the presented shift: log of the spectral radius.
    double entropy() const;
};

SubsetAutomaton determinize(const LabeledGraph& g);

/// Symbols reachable from `from` in one step carrying label y.
SymbolSet step_forward(const LabeledGraph& g, const SymbolSet& from, int y);
/// Symbols with label y having a successor in `to`.
SymbolSet step_backward(const LabeledGraph& g, const SymbolSet& to, int y);

/// Whether every label word of `inner` is a label word of `outer`. Y-symbols are
/// matched by name; both graphs should be essential so that finite label words
/// determine the image subshift.
bool language_contained(const LabeledGraph& inner, const LabeledGraph& outer);

}  // namespace fiberlift
