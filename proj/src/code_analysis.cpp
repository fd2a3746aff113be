#include "fiberlift/code_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

#include "fiberlift/automaton.hpp"
#include "fiberlift/error.hpp"
#include "fiberlift/structure.hpp"

namespace fiberlift {

namespace {

constexpr double kEntropyAgreement = 1e-9;

/// Equal-label pair graph, stepped lazily in either direction.
class PairGraph {
public:
    PairGraph(const LabeledGraph& g, bool forward) : g_(g), forward_(forward), n_(g.size()) {}

    std::size_t index(int a, int b) const { return static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b); }
    int first(std::size_t p) const { return static_cast<int>(p / n_); }
    int second(std::size_t p) const { return static_cast<int>(p % n_); }
    std::size_t size() const { return n_ * n_; }
    bool valid(std::size_t p) const { return g_.label(first(p)) == g_.label(second(p)); }

    template <class F>
    void neighbors(std::size_t p, F&& f) const {
        const auto& na = forward_ ? g_.successors(first(p)) : g_.predecessors(first(p));
        const auto& nb = forward_ ? g_.successors(second(p)) : g_.predecessors(second(p));
        for (int a : na)
            for (int b : nb)
                if (g_.label(a) == g_.label(b)) f(index(a, b));
    }

    template <class F>
    void reverse_neighbors(std::size_t p, F&& f) const {
        const auto& na = forward_ ? g_.predecessors(first(p)) : g_.successors(first(p));
        const auto& nb = forward_ ? g_.predecessors(second(p)) : g_.successors(second(p));
        for (int a : na)
            for (int b : nb)
                if (g_.label(a) == g_.label(b)) f(index(a, b));
    }

private:
    const LabeledGraph& g_;
    bool forward_;
    std::size_t n_;
};

void require_irreducible(const LabeledGraph& g) {
    if (!is_irreducible(g)) throw Error(ErrorKind::NotIrreducible, "code analysis requires an irreducible essential graph");
}

bool has_diamond(const LabeledGraph& g) {
    PairGraph pairs(g, true);
    std::vector<char> seen(pairs.size(), 0);
    std::deque<std::size_t> queue;
    for (int a = 0; a < static_cast<int>(g.size()); ++a) {
        pairs.neighbors(pairs.index(a, a), [&](std::size_t q) {
            if (pairs.first(q) != pairs.second(q) && !seen[q]) {
                seen[q] = 1;
                queue.push_back(q);
            }
        });
    }
    while (!queue.empty()) {
        std::size_t p = queue.front();
        queue.pop_front();
        bool back_on_diagonal = false;
        pairs.neighbors(p, [&](std::size_t q) {
            if (pairs.first(q) == pairs.second(q)) {
                back_on_diagonal = true;
            } else if (!seen[q]) {
                seen[q] = 1;
                queue.push_back(q);
            }
        });
        if (back_on_diagonal) return true;
    }
    return false;
}

/// Whether some pair that has just split off the diagonal admits an infinite continuation.
bool splits_forever(const LabeledGraph& g, bool forward) {
    PairGraph pairs(g, forward);
    std::vector<int> out_deg(pairs.size(), 0);
    std::vector<char> alive(pairs.size(), 0);
    std::deque<std::size_t> dead;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        if (!pairs.valid(p)) continue;
        alive[p] = 1;
        pairs.neighbors(p, [&](std::size_t) { ++out_deg[p]; });
        if (out_deg[p] == 0) dead.push_back(p);
    }
    while (!dead.empty()) {
        std::size_t p = dead.front();
        dead.pop_front();
        if (!alive[p]) continue;
        alive[p] = 0;
        pairs.reverse_neighbors(p, [&](std::size_t q) {
            if (alive[q] && --out_deg[q] == 0) dead.push_back(q);
        });
    }
    for (int a = 0; a < static_cast<int>(g.size()); ++a) {
        bool found = false;
        pairs.neighbors(pairs.index(a, a), [&](std::size_t q) {
            if (pairs.first(q) != pairs.second(q) && alive[q]) found = true;
        });
        if (found) return true;
    }
    return false;
}

struct SubsetSearch {
    std::vector<SymbolSet> sets;
    std::vector<Word> words;
};

/// Reachable nonempty subsets from reading label words forward (or backward), with
/// a shortest witness word for each, in breadth-first order.
SubsetSearch explore_subsets(const LabeledGraph& g, bool forward) {
    SubsetSearch out;
    std::unordered_map<SymbolSet, int, SymbolSetHash> ids;
    auto add = [&](SymbolSet s, Word w) {
        if (s.empty() || ids.count(s)) return;
        ids.emplace(s, static_cast<int>(out.sets.size()));
        out.sets.push_back(std::move(s));
        out.words.push_back(std::move(w));
    };
    for (int y = 0; y < static_cast<int>(g.y_size()); ++y) add(g.label_class_set(y), Word{y});
    for (std::size_t head = 0; head < out.sets.size(); ++head) {
        for (int y = 0; y < static_cast<int>(g.y_size()); ++y) {
            Word w = out.words[head];
            if (forward) {
                w.push_back(y);
                add(step_forward(g, out.sets[head], y), std::move(w));
            } else {
                w.insert(w.begin(), y);
                add(step_backward(g, out.sets[head], y), std::move(w));
            }
        }
    }
    return out;
}

struct PhasedGraph {
    std::size_t n = 0;
    std::size_t period = 0;
    std::vector<int> nodes;  // node id = phase * n + symbol
    std::vector<std::vector<int>> succ;  // indexed by node id
};

PhasedGraph build_phased(const LabeledGraph& g, std::span<const int> y) {
    PhasedGraph ph;
    ph.n = g.size();
    ph.period = y.size();
    ph.succ.assign(ph.n * ph.period, {});
    for (std::size_t k = 0; k < ph.period; ++k) {
        int next_label = y[(k + 1) % ph.period];
        for (int x : g.label_class(y[k])) {
            ph.nodes.push_back(static_cast<int>(k * ph.n) + x);
            for (int t : g.successors(x))
                if (g.label(t) == next_label)
                    ph.succ[k * ph.n + static_cast<std::size_t>(x)].push_back(
                        static_cast<int>(((k + 1) % ph.period) * ph.n) + t);
        }
    }
    return ph;
}

std::vector<std::vector<int>> recurrent_components(const PhasedGraph& ph) {
    std::vector<std::vector<int>> out;
    for (auto& comp : strongly_connected_components(ph.succ)) {
        bool cyclic = comp.size() > 1;
        if (!cyclic) {
            const auto& s = ph.succ[static_cast<std::size_t>(comp.front())];
            cyclic = std::find(s.begin(), s.end(), comp.front()) != s.end();
        }
        if (cyclic) out.push_back(std::move(comp));
    }
    return out;
}

}  // namespace

bool is_finite_to_one(const LabeledGraph& g) {
    require_irreducible(g);
    return !has_diamond(g);
}

bool is_right_closing(const LabeledGraph& g) {
    require_irreducible(g);
    return !splits_forever(g, true);
}

bool is_left_closing(const LabeledGraph& g) {
    require_irreducible(g);
    return !splits_forever(g, false);
}

bool is_constant_to_one(const LabeledGraph& g) {
    return is_finite_to_one(g) && is_right_closing(g) && is_left_closing(g);
}

std::size_t d_star(const LabeledGraph& g, std::span<const int> y_word, std::size_t position) {
    if (position >= y_word.size()) throw Error(ErrorKind::InvalidInput, "position outside word");
    SymbolSet fwd = SymbolSet::full(g.size());
    for (std::size_t i = 0; i <= position; ++i) fwd = step_forward(g, fwd, y_word[i]);
    SymbolSet bwd = SymbolSet::full(g.size());
    for (std::size_t i = y_word.size(); i-- > position;) bwd = step_backward(g, bwd, y_word[i]);
    return (fwd & bwd).count();
}

DegreeReport degree_report(const LabeledGraph& g) {
    require_irreducible(g);
    DegreeReport report;
    report.finite_to_one = !has_diamond(g);
    report.entropy_x = entropy(g);
    report.entropy_y = determinize(g).entropy();
    bool entropy_equal = std::abs(report.entropy_x - report.entropy_y) <= kEntropyAgreement;
    if (entropy_equal != report.finite_to_one)
        throw Error(ErrorKind::Internal, "diamond test disagrees with entropy comparison");
    if (!report.finite_to_one) return report;

    auto fwd = explore_subsets(g, true);
    auto bwd = explore_subsets(g, false);
    std::size_t best = g.size() + 1;
    std::size_t best_len = 0;
    for (std::size_t i = 0; i < fwd.sets.size(); ++i) {
        for (std::size_t j = 0; j < bwd.sets.size(); ++j) {
            std::size_t c = (fwd.sets[i] & bwd.sets[j]).count();
            if (c == 0) continue;
            std::size_t len = fwd.words[i].size() + bwd.words[j].size() - 1;
            if (c < best || (c == best && len < best_len)) {
                best = c;
                best_len = len;
                report.magic_word = fwd.words[i];
                report.magic_word.insert(report.magic_word.end(), bwd.words[j].begin() + 1, bwd.words[j].end());
                report.magic_position = fwd.words[i].size() - 1;
            }
        }
    }
    report.degree = static_cast<int>(best);
    if (d_star(g, report.magic_word, report.magic_position) != best)
        throw Error(ErrorKind::Internal, "magic word certificate does not reproduce the degree");
    return report;
}

DegreeReport compute_degree(const LabeledGraph& g) {
    auto report = degree_report(g);
    if (!report.finite_to_one) throw Error(ErrorKind::InfiniteToOne, "code has a graph diamond");
    return report;
}

std::vector<Word> preimage_words(const LabeledGraph& g, std::span<const int> y_word) {
    if (y_word.empty()) return {Word{}};
    const std::size_t len = y_word.size();
    SymbolSet essential(g.size());
    for (int x : g.essential_symbols()) essential.insert(static_cast<std::size_t>(x));
    for (int y : y_word)
        if (y < 0 || y >= static_cast<int>(g.y_size())) return {};
    std::vector<SymbolSet> viable(len);
    viable[0] = g.label_class_set(y_word[0]) & essential;
    for (std::size_t i = 1; i < len; ++i) viable[i] = step_forward(g, viable[i - 1], y_word[i]) & essential;
    for (std::size_t i = len - 1; i-- > 0;) viable[i] &= step_backward(g, viable[i + 1], y_word[i]);

    std::vector<Word> out;
    Word path;
    auto extend = [&](auto&& self) -> void {
        std::size_t i = path.size();
        if (i == len) {
            out.push_back(path);
            return;
        }
        auto try_symbol = [&](int x) {
            path.push_back(x);
            self(self);
            path.pop_back();
        };
        if (i == 0) {
            viable[0].for_each(try_symbol);
        } else {
            for (int t : g.successors(path.back()))
                if (viable[i].contains(static_cast<std::size_t>(t))) try_symbol(t);
        }
    };
    extend(extend);
    return out;
}

std::vector<Word> preimage_base_words(const LabeledGraph& g, std::span<const int> y_word) {
    const auto& rec = g.recoding();
    if (!rec) return preimage_words(g, y_word);
    std::vector<Word> out;
    for (const auto& path : preimage_words(g, y_word)) {
        if (path.empty()) {
            out.emplace_back();
            continue;
        }
        Word base = rec->blocks[static_cast<std::size_t>(path.front())];
        for (std::size_t i = 1; i < path.size(); ++i) base.push_back(rec->blocks[static_cast<std::size_t>(path[i])].back());
        out.push_back(std::move(base));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

PhasedFiberDecomposition periodic_fiber(const LabeledGraph& g, const PeriodicOrbit& y) {
    if (y.word.empty() || !is_primitive(y.word)) throw Error(ErrorKind::InvalidInput, "orbit word must be primitive");
    for (int s : y.word)
        if (s < 0 || s >= static_cast<int>(g.y_size())) throw Error(ErrorKind::InvalidInput, "orbit symbol outside Y");
    PhasedFiberDecomposition out;
    out.base_orbit = canonical_orbit(y.word);
    const auto& w = out.base_orbit.word;
    const std::size_t p = w.size();
    auto ph = build_phased(g, w);
    auto cycles = recurrent_components(ph);
    if (cycles.empty()) throw Error(ErrorKind::NotInImage, "no preimage cycle over " + g.render_y(w));

    std::vector<int> cycle_of(ph.succ.size(), -1);
    for (std::size_t c = 0; c < cycles.size(); ++c)
        for (int v : cycles[c]) cycle_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
    for (std::size_t c = 0; c < cycles.size(); ++c) {
        std::size_t inner_edges = 0;
        for (int v : cycles[c])
            for (int t : ph.succ[static_cast<std::size_t>(v)])
                if (cycle_of[static_cast<std::size_t>(t)] == static_cast<int>(c)) ++inner_edges;
        if (inner_edges != cycles[c].size())
            throw Error(ErrorKind::FiberInfinite, "recurrent part over " + g.render_y(w) + " is not a union of simple cycles");
    }
    // A path between two distinct cycles yields a non-periodic preimage, hence infinitely many.
    for (std::size_t c = 0; c < cycles.size(); ++c) {
        std::vector<char> seen(ph.succ.size(), 0);
        std::vector<int> stack(cycles[c].begin(), cycles[c].end());
        for (int v : stack) seen[static_cast<std::size_t>(v)] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int t : ph.succ[static_cast<std::size_t>(v)]) {
                if (seen[static_cast<std::size_t>(t)]) continue;
                if (cycle_of[static_cast<std::size_t>(t)] >= 0)
                    throw Error(ErrorKind::FiberInfinite, "preimage cycles over " + g.render_y(w) + " are connected");
                seen[static_cast<std::size_t>(t)] = 1;
                stack.push_back(t);
            }
        }
    }

    for (const auto& cycle : cycles) {
        int start = -1;
        for (int v : cycle)
            if (static_cast<std::size_t>(v) < ph.n && (start < 0 || v < start)) start = v;
        LiftOrbit lift;
        int v = start;
        do {
            lift.aligned.push_back(static_cast<int>(static_cast<std::size_t>(v) % ph.n));
            for (int t : ph.succ[static_cast<std::size_t>(v)])
                if (cycle_of[static_cast<std::size_t>(t)] == cycle_of[static_cast<std::size_t>(v)]) {
                    v = t;
                    break;
                }
        } while (v != start);
        lift.winding = static_cast<int>(lift.aligned.size() / p);
        lift.orbit = canonical_orbit(lift.aligned);
        out.fiber_size += lift.winding;
        out.lift_orbits.push_back(std::move(lift));
    }
    std::sort(out.lift_orbits.begin(), out.lift_orbits.end(),
              [](const LiftOrbit& a, const LiftOrbit& b) { return a.orbit < b.orbit; });
    return out;
}

std::vector<PeriodicOrbit> enumerate_image_orbits(const LabeledGraph& g, int max_period) {
    if (max_period < 1) throw Error(ErrorKind::InvalidInput, "max_period must be at least 1");
    auto dfa = determinize(g);
    std::vector<PeriodicOrbit> out;
    Word w;
    auto extend = [&](auto&& self, int state, std::size_t period) -> void {
        if (w.size() == period) {
            if (!is_primitive(w) || least_rotation_index(w) != 0) return;
            if (!recurrent_components(build_phased(g, w)).empty()) out.push_back(PeriodicOrbit{w});
            return;
        }
        for (int y = 0; y < static_cast<int>(g.y_size()); ++y) {
            if (!w.empty() && y < w.front()) continue;
            int next = dfa.transitions[static_cast<std::size_t>(state)][static_cast<std::size_t>(y)];
            if (next < 0) continue;
            w.push_back(y);
            self(self, next, period);
            w.pop_back();
        }
    };
    for (int period = 1; period <= max_period; ++period) extend(extend, 0, static_cast<std::size_t>(period));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace fiberlift
