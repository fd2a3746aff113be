#include "fiberlift/automaton.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <unordered_map>

#include "fiberlift/error.hpp"
#include "fiberlift/structure.hpp"

namespace fiberlift {

SymbolSet step_forward(const LabeledGraph& g, const SymbolSet& from, int y) {
    SymbolSet out(g.size());
    for (int t : g.label_class(y)) {
        for (int p : g.predecessors(t)) {
            if (from.contains(static_cast<std::size_t>(p))) {
                out.insert(static_cast<std::size_t>(t));
                break;
            }
        }
    }
    return out;
}

SymbolSet step_backward(const LabeledGraph& g, const SymbolSet& to, int y) {
    SymbolSet out(g.size());
    for (int s : g.label_class(y)) {
        for (int t : g.successors(s)) {
            if (to.contains(static_cast<std::size_t>(t))) {
                out.insert(static_cast<std::size_t>(s));
                break;
            }
        }
    }
    return out;
}

SubsetAutomaton determinize(const LabeledGraph& g) {
    SubsetAutomaton a;
    a.y_symbols = g.y_symbols();
    std::unordered_map<SymbolSet, int, SymbolSetHash> ids;
    auto intern = [&](SymbolSet s) {
        auto [it, inserted] = ids.emplace(s, static_cast<int>(a.states.size()));
        if (inserted) {
            a.states.push_back(std::move(s));
            a.transitions.emplace_back(g.y_size(), -1);
        }
        return it->second;
    };
    intern(SymbolSet::full(g.size()));
    for (std::size_t head = 0; head < a.states.size(); ++head) {
        for (int y = 0; y < static_cast<int>(g.y_size()); ++y) {
            SymbolSet next = step_forward(g, a.states[head], y);
            if (next.empty()) continue;
            int id = intern(std::move(next));
            a.transitions[head][static_cast<std::size_t>(y)] = id;
        }
    }
    return a;
}

bool SubsetAutomaton::accepts(std::span<const int> y_word) const {
    int s = 0;
    for (int y : y_word) {
        if (y < 0 || y >= static_cast<int>(y_symbols.size())) return false;
        s = transitions[static_cast<std::size_t>(s)][static_cast<std::size_t>(y)];
        if (s < 0) return false;
    }
    return true;
}

std::vector<int> SubsetAutomaton::essential_states() const {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t s = 0; s < size(); ++s)
        for (int t : transitions[s])
            if (t >= 0) edges.emplace_back(static_cast<int>(s), t);
    std::vector<std::string> names(size());
    LabeledGraph skeleton(names, edges, std::vector<int>(size(), 0), {""});
    return skeleton.essential_symbols();
}

double SubsetAutomaton::entropy() const {
    std::vector<std::vector<int>> succ(size());
    for (std::size_t s = 0; s < size(); ++s)
        for (int t : transitions[s])
            if (t >= 0) succ[s].push_back(t);
    double rho = spectral_radius(succ);
    return rho > 0 ? std::log(rho) : -INFINITY;
}

bool language_contained(const LabeledGraph& inner, const LabeledGraph& outer) {
    std::vector<int> to_outer(inner.y_size(), -1);
    for (std::size_t y = 0; y < inner.y_size(); ++y) to_outer[y] = outer.find_y(inner.y_name(static_cast<int>(y)));
    using Pair = std::pair<SymbolSet, SymbolSet>;
    std::map<Pair, char> seen;
    std::deque<Pair> queue;
    Pair start{SymbolSet::full(inner.size()), SymbolSet::full(outer.size())};
    seen.emplace(start, 1);
    queue.push_back(start);
    while (!queue.empty()) {
        auto [in, out] = queue.front();
        queue.pop_front();
        for (int y = 0; y < static_cast<int>(inner.y_size()); ++y) {
            SymbolSet in_next = step_forward(inner, in, y);
            if (in_next.empty()) continue;
            if (to_outer[static_cast<std::size_t>(y)] < 0) return false;
            SymbolSet out_next = step_forward(outer, out, to_outer[static_cast<std::size_t>(y)]);
            if (out_next.empty()) return false;
            Pair next{std::move(in_next), std::move(out_next)};
            if (seen.emplace(next, 1).second) queue.push_back(std::move(next));
        }
    }
    return true;
}

}  // namespace fiberlift
