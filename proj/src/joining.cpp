#include "fiberlift/joining.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "fiberlift/automaton.hpp"
#include "fiberlift/error.hpp"
#include "fiberlift/structure.hpp"

namespace fiberlift {

namespace {

constexpr std::size_t kCheckpointStride = 4096;

/// Cartesian product of per-coordinate choices, in lexicographic order.
template <class F>
void for_each_product(const std::vector<std::vector<int>>& choices, bool distinct, F&& f) {
    Word t;
    auto rec = [&](auto&& self) -> void {
        if (t.size() == choices.size()) {
            f(t);
            return;
        }
        for (int c : choices[t.size()]) {
            if (distinct && std::find(t.begin(), t.end(), c) != t.end()) continue;
            t.push_back(c);
            self(self);
            t.pop_back();
        }
    };
    rec(rec);
}

TupleGraph build_tuples(const LabeledGraph& g, int n, bool distinct) {
    if (n < 1) throw Error(ErrorKind::InvalidInput, "arity must be at least 1");
    std::vector<Word> tuples;
    for (int y = 0; y < static_cast<int>(g.y_size()); ++y) {
        std::vector<std::vector<int>> choices(static_cast<std::size_t>(n), g.label_class(y));
        for_each_product(choices, distinct, [&](const Word& t) { tuples.push_back(t); });
    }
    std::sort(tuples.begin(), tuples.end());
    std::map<Word, int> ids;
    for (std::size_t i = 0; i < tuples.size(); ++i) ids.emplace(tuples[i], static_cast<int>(i));

    std::vector<std::pair<int, int>> transitions;
    std::vector<std::string> names;
    std::vector<int> labels;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        const auto& t = tuples[i];
        std::string name;
        for (std::size_t c = 0; c < t.size(); ++c) {
            if (c > 0) name += '|';
            name += g.x_name(t[c]);
        }
        names.push_back(std::move(name));
        labels.push_back(g.label(t.front()));
        for (int y = 0; y < static_cast<int>(g.y_size()); ++y) {
            std::vector<std::vector<int>> choices;
            bool possible = true;
            for (int a : t) {
                std::vector<int> next;
                for (int b : g.successors(a))
                    if (g.label(b) == y) next.push_back(b);
                possible = possible && !next.empty();
                choices.push_back(std::move(next));
            }
            if (!possible) continue;
            for_each_product(choices, distinct, [&](const Word& u) {
                transitions.emplace_back(static_cast<int>(i), ids.at(u));
            });
        }
    }
    LabeledGraph full(std::move(names), transitions, std::move(labels), g.y_symbols());
    auto keep = full.essential_symbols();
    TupleGraph out;
    out.arity = n;
    out.graph = full.induced(keep);
    for (int k : keep) out.tuples.push_back(tuples[static_cast<std::size_t>(k)]);
    return out;
}

}  // namespace

int TupleGraph::find_tuple(std::span<const int> tuple) const {
    Word key(tuple.begin(), tuple.end());
    auto it = std::lower_bound(tuples.begin(), tuples.end(), key);
    if (it == tuples.end() || *it != key) return -1;
    return static_cast<int>(it - tuples.begin());
}

Word TupleGraph::coordinate(std::span<const int> path, int i) const {
    Word out;
    out.reserve(path.size());
    for (int s : path) out.push_back(tuples[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)]);
    return out;
}

TupleGraph fiber_product(const LabeledGraph& g, int n) { return build_tuples(g, n, false); }

DegreeJoiningGraph degree_joining_graph(const LabeledGraph& g) {
    auto report = compute_degree(g);
    return degree_joining_graph(g, *report.degree);
}

DegreeJoiningGraph degree_joining_graph(const LabeledGraph& g, int degree) {
    DegreeJoiningGraph out;
    out.degree = degree;
    out.lambda = build_tuples(g, degree, true);
    if (out.lambda.tuples.empty()) throw Error(ErrorKind::ProjectionNotOnto, "degree joining is empty");

    const auto& lg = out.lambda.graph;
    std::vector<std::vector<int>> succ(lg.size());
    for (std::size_t s = 0; s < lg.size(); ++s) succ[s] = lg.successors(static_cast<int>(s));
    for (auto& comp : strongly_connected_components(succ)) {
        bool cyclic = comp.size() > 1 || lg.has_transition(comp.front(), comp.front());
        if (cyclic) out.components.push_back(std::move(comp));
    }
    out.irreducible = out.components.size() == 1 && out.components.front().size() == lg.size();

    out.projections_onto = true;
    for (int i = 0; i < degree; ++i) {
        SymbolSet covered(g.size());
        for (const auto& t : out.lambda.tuples) covered.insert(static_cast<std::size_t>(t[static_cast<std::size_t>(i)]));
        if (covered.count() != g.size()) out.projections_onto = false;
    }
    out.onto_image = language_contained(g, lg);
    if (!out.projections_onto) throw Error(ErrorKind::ProjectionNotOnto, "a coordinate projection of the degree joining misses X");
    if (!out.onto_image) throw Error(ErrorKind::ProjectionNotOnto, "degree joining does not map onto the image");
    return out;
}

Word lambda_path_over(const DegreeJoiningGraph& lambda, std::span<const int> y_window) {
    const auto& lg = lambda.lambda.graph;
    const std::size_t len = y_window.size();
    if (len == 0) return {};
    for (int y : y_window)
        if (y < 0 || y >= static_cast<int>(lg.y_size())) throw Error(ErrorKind::NoPath, "window symbol outside Y");

    auto step_back = [&](const SymbolSet& next, int y) {
        SymbolSet out(lg.size());
        for (int s : lg.label_class(y))
            for (int t : lg.successors(s))
                if (next.contains(static_cast<std::size_t>(t))) {
                    out.insert(static_cast<std::size_t>(s));
                    break;
                }
        return out;
    };

    // Backward viability, keeping every kCheckpointStride-th set.
    std::vector<SymbolSet> checkpoints((len + kCheckpointStride - 1) / kCheckpointStride);
    SymbolSet viable = lg.label_class_set(y_window[len - 1]);
    for (std::size_t t = len; t-- > 0;) {
        if (t + 1 < len) viable = step_back(viable, y_window[t]);
        if (viable.empty()) throw Error(ErrorKind::NoPath, "window is not a label word of the degree joining");
        if (t % kCheckpointStride == 0) checkpoints[t / kCheckpointStride] = viable;
    }

    Word path;
    path.reserve(len);
    std::vector<SymbolSet> block;
    for (std::size_t b = 0; b < checkpoints.size(); ++b) {
        const std::size_t begin = b * kCheckpointStride;
        const std::size_t end = std::min(len, begin + kCheckpointStride);
        block.assign(end - begin, SymbolSet());
        SymbolSet v = end < len ? step_back(checkpoints[b + 1], y_window[end - 1])
                                : lg.label_class_set(y_window[len - 1]);
        block[end - 1 - begin] = v;
        for (std::size_t t = end - 1; t-- > begin;) {
            v = step_back(v, y_window[t]);
            block[t - begin] = v;
        }
        for (std::size_t t = begin; t < end; ++t) {
            const SymbolSet& allowed = block[t - begin];
            int chosen = -1;
            if (t == 0) {
                allowed.for_each([&](int s) {
                    if (chosen < 0) chosen = s;
                });
            } else {
                for (int s : lg.successors(path.back()))
                    if (allowed.contains(static_cast<std::size_t>(s))) {
                        chosen = s;
                        break;
                    }
            }
            if (chosen < 0) throw Error(ErrorKind::Internal, "viability sets are inconsistent");
            path.push_back(chosen);
        }
    }
    return path;
}

int permute_symbol(const TupleGraph& t, int symbol, std::span<const int> permutation) {
    const auto& src = t.tuples[static_cast<std::size_t>(symbol)];
    Word img(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) img[i] = src[static_cast<std::size_t>(permutation[i])];
    return t.find_tuple(img);
}

PeriodicDegreeJoinings enumerate_periodic_degree_joinings(const LabeledGraph& g, const DegreeJoiningGraph& lambda,
                                                          const PeriodicOrbit& y) {
    auto base = periodic_fiber(g, y);
    if (base.fiber_size != lambda.degree)
        throw Error(ErrorKind::NotConstantToOne, "orbit " + g.render_y(base.base_orbit.word) + " has " +
                                                     std::to_string(base.fiber_size) + " preimages but the degree is " +
                                                     std::to_string(lambda.degree));
    PeriodicDegreeJoinings out;
    out.base_orbit = base.base_orbit;
    auto fiber = periodic_fiber(lambda.lambda.graph, y);
    out.joinings = fiber.lift_orbits;
    out.tuple_points = fiber.fiber_size;

    std::vector<Word> permutations;
    Word perm(static_cast<std::size_t>(lambda.degree));
    std::iota(perm.begin(), perm.end(), 0);
    do permutations.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    // Permutations form a group, so pairwise relatedness reduces to every
    // joining being an image of the first.
    std::vector<PeriodicOrbit> images;
    if (!out.joinings.empty())
        for (const auto& f : permutations) {
            Word image;
            for (int s : out.joinings.front().aligned) {
                int t = permute_symbol(lambda.lambda, s, f);
                if (t < 0) break;
                image.push_back(t);
            }
            if (image.size() == out.joinings.front().aligned.size()) images.push_back(canonical_orbit(image));
        }
    std::sort(images.begin(), images.end());
    out.permutation_related = std::all_of(out.joinings.begin(), out.joinings.end(), [&](const LiftOrbit& j) {
        return std::binary_search(images.begin(), images.end(), j.orbit);
    });
    return out;
}

}  // namespace fiberlift
