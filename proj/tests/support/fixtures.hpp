#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fiberlift/ca_examples.hpp"
#include "fiberlift/labeled_graph.hpp"
#include "fiberlift/measures.hpp"
#include "fiberlift/recode.hpp"

namespace fixtures {

using fiberlift::LabeledGraph;
using fiberlift::Word;

struct Fixture {
    std::string name;
    LabeledGraph graph;
    bool constant_to_one = false;  ///< known by construction
};

inline LabeledGraph full_shift(int n, bool identity_labels = true) {
    std::vector<std::string> xs;
    for (int i = 0; i < n; ++i) xs.push_back(std::to_string(i));
    std::vector<std::pair<int, int>> t;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t.emplace_back(a, b);
    std::vector<int> label(static_cast<std::size_t>(n), 0);
    if (identity_labels) std::iota(label.begin(), label.end(), 0);
    return LabeledGraph(xs, t, label, identity_labels ? xs : std::vector<std::string>{"0"});
}

inline LabeledGraph golden_mean() {
    return LabeledGraph::from_names({"a", "b"}, {{"a", "a"}, {"a", "b"}, {"b", "a"}}, {"a", "b"});
}

inline LabeledGraph ca(int n, fiberlift::CAFamily f) { return fiberlift::LinearCACode{n, f}.graph(); }

/// Codes with known degree: the linear CA codes and a few trivial ones.
inline std::vector<Fixture> named_fixtures() {
    using fiberlift::CAFamily;
    std::vector<Fixture> out;
    out.push_back({"rule102", ca(2, CAFamily::Sum), true});
    for (int n = 2; n <= 5; ++n) out.push_back({"diff" + std::to_string(n), ca(n, CAFamily::Difference), true});
    out.push_back({"sum5", ca(5, CAFamily::Sum), true});
    out.push_back({"identity2", full_shift(2), true});
    out.push_back({"golden-mean", golden_mean(), true});
    return out;
}

/// Irreducible vertex-labeled graph whose successor (or predecessor) labels are
/// pairwise distinct, hence finite-to-one; a Hamiltonian cycle keeps it irreducible.
inline LabeledGraph random_resolving(std::mt19937& rng, int n, int labels, bool right) {
    std::uniform_int_distribution<int> lab(0, labels - 1), coin(0, 2);
    std::vector<int> label(static_cast<std::size_t>(n));
    for (auto& l : label) l = lab(rng);
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v) {
        std::set<int> used;
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        int cycle_next = (v + 1) % n;
        order.insert(order.begin(), cycle_next);
        std::set<int> chosen;
        for (int u : order) {
            if (chosen.count(u)) continue;
            if (u != cycle_next && coin(rng) == 0) continue;
            if (used.count(label[static_cast<std::size_t>(u)])) continue;
            used.insert(label[static_cast<std::size_t>(u)]);
            chosen.insert(u);
            edges.push_back(right ? std::pair{v, u} : std::pair{u, v});
        }
    }
    std::vector<std::string> xs, ys;
    for (int i = 0; i < n; ++i) xs.push_back("s" + std::to_string(i));
    for (int i = 0; i < labels; ++i) ys.push_back("y" + std::to_string(i));
    // Drop unused labels so the label alphabet is exactly the image alphabet.
    std::vector<int> remap(static_cast<std::size_t>(labels), -1);
    std::vector<std::string> used_ys;
    for (int l : label)
        if (remap[static_cast<std::size_t>(l)] < 0) {
            remap[static_cast<std::size_t>(l)] = static_cast<int>(used_ys.size());
            used_ys.push_back(ys[static_cast<std::size_t>(l)]);
        }
    for (auto& l : label) l = remap[static_cast<std::size_t>(l)];
    return LabeledGraph(xs, edges, label, used_ys);
}

/// On the full k-shift with m = 0, n = 1. Bipermutive: y_i = ρ(σ(x_i) + τ(x_{i+1}) mod k),
/// constant-to-one of degree k. Otherwise right-permutive only: y_i = σ_{x_i}(x_{i+1}),
/// right-closing and hence finite-to-one.
inline LabeledGraph random_permutive(std::mt19937& rng, int k, bool bipermutive) {
    fiberlift::SlidingBlockCode c;
    c.memory = 0;
    c.anticipation = 1;
    for (int i = 0; i < k; ++i) c.alphabet.push_back(std::to_string(i));
    c.y_symbols = c.alphabet;
    auto perm = [&] {
        std::vector<int> p(static_cast<std::size_t>(k));
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        return p;
    };
    if (bipermutive) {
        auto rho = perm(), sigma = perm(), tau = perm();
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                c.block_map[Word{a, b}] =
                    rho[static_cast<std::size_t>((sigma[static_cast<std::size_t>(a)] + tau[static_cast<std::size_t>(b)]) % k)];
    } else {
        for (int a = 0; a < k; ++a) {
            auto sigma = perm();
            for (int b = 0; b < k; ++b) c.block_map[Word{a, b}] = sigma[static_cast<std::size_t>(b)];
        }
    }
    return fiberlift::recode_to_one_block(c);
}

/// 20 deterministic finite-to-one fixtures with base alphabets of at most 6 symbols.
inline std::vector<Fixture> random_fixtures() {
    std::mt19937 rng(20240517);
    std::vector<Fixture> out;
    for (int i = 0; i < 14; ++i) {
        int n = 2 + i % 5;
        int labels = 2 + (i / 2) % 2;
        out.push_back({"resolving" + std::to_string(i), random_resolving(rng, n, labels, i % 2 == 0), false});
    }
    for (int i = 0; i < 6; ++i) {
        int k = 2 + i % 2;
        bool bi = i % 2 == 0;
        out.push_back({(bi ? "bipermutive" : "permutive") + std::to_string(i), random_permutive(rng, k, bi), bi});
    }
    return out;
}

inline std::vector<Fixture> all_fixtures() {
    auto out = named_fixtures();
    auto more = random_fixtures();
    out.insert(out.end(), more.begin(), more.end());
    return out;
}

/// Random vertex labelings of random irreducible graphs, mostly infinite-to-one.
inline std::vector<LabeledGraph> random_labelings(int count) {
    std::mt19937 rng(99);
    std::vector<LabeledGraph> out;
    std::bernoulli_distribution coin(0.4);
    for (int i = 0; i < count; ++i) {
        int n = 2 + i % 5;
        std::vector<std::string> xs;
        for (int v = 0; v < n; ++v) xs.push_back("v" + std::to_string(v));
        std::vector<std::pair<int, int>> t;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (b == (a + 1) % n || coin(rng)) t.emplace_back(a, b);
        std::uniform_int_distribution<int> lab(0, 1);
        std::vector<int> label(static_cast<std::size_t>(n));
        for (auto& l : label) l = lab(rng);
        label[0] = 0;
        label[static_cast<std::size_t>(n - 1)] = 1;
        out.emplace_back(xs, t, label, std::vector<std::string>{"0", "1"});
    }
    return out;
}

/// Random exact measure on 2..4 symbols: Bernoulli (kind 0, zeros allowed),
/// positive Markov (kind 1) or periodic (kind 2).
inline fiberlift::Measure random_measure(std::mt19937& rng, int kind) {
    using fiberlift::Rational;
    std::uniform_int_distribution<int> weight(0, 4), size(2, 4);
    int k = size(rng);
    std::vector<std::string> alphabet;
    for (int i = 0; i < k; ++i) alphabet.push_back(std::to_string(i));
    auto distribution = [&](bool allow_zero) {
        std::vector<long> w(static_cast<std::size_t>(k));
        long total = 0;
        for (auto& x : w) {
            x = weight(rng) + (allow_zero ? 0 : 1);
            total += x;
        }
        if (total == 0) {
            w[0] = 1;
            total = 1;
        }
        std::vector<Rational> p;
        for (long x : w) p.push_back(fiberlift::ratio(x, total));
        return p;
    };
    if (kind == 0) return fiberlift::BernoulliMeasure(alphabet, distribution(true));
    if (kind == 1) {
        std::vector<std::vector<Rational>> rows;
        for (int i = 0; i < k; ++i) rows.push_back(distribution(false));
        return fiberlift::MarkovMeasure(alphabet, rows);
    }
    Word orbit;
    std::uniform_int_distribution<int> sym(0, k - 1);
    for (int i = 0, n = size(rng) + 1; i < n; ++i) orbit.push_back(sym(rng));
    return fiberlift::PeriodicMeasure(alphabet, orbit);
}

/// Kolmogorov consistency on both sides of a random word: Σ_a μ[wa] = Σ_a μ[aw] = μ[w].
inline bool kolmogorov_probe(std::mt19937& rng, const fiberlift::Measure& m) {
    using fiberlift::Rational;
    const auto k = static_cast<int>(fiberlift::alphabet(m).size());
    std::uniform_int_distribution<int> len(0, 4), sym(0, k - 1);
    Word w;
    for (int i = 0, n = len(rng); i < n; ++i) w.push_back(sym(rng));
    Rational right = 0, left = 0;
    for (int a = 0; a < k; ++a) {
        Word wa = w, aw{a};
        wa.push_back(a);
        aw.insert(aw.end(), w.begin(), w.end());
        right += fiberlift::cylinder_probability(m, wa);
        left += fiberlift::cylinder_probability(m, aw);
    }
    const Rational whole = fiberlift::cylinder_probability(m, w);
    return right == whole && left == whole;
}

/// The deterministic n-cycle as a Markov chain.
inline fiberlift::MarkovMeasure cycle_chain(int n) {
    std::vector<std::string> states;
    std::vector<std::vector<fiberlift::Rational>> rows(static_cast<std::size_t>(n),
                                                        std::vector<fiberlift::Rational>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) {
        states.push_back(std::to_string(i));
        rows[static_cast<std::size_t>(i)][static_cast<std::size_t>((i + 1) % n)] = 1;
    }
    return fiberlift::MarkovMeasure(states, rows);
}

// Oracles, written independently of the library's algorithms.

/// Number of points x with π(x) = (y_word)^∞ exactly, at phase 0: the trace of the
/// product of label-restricted transition matrices over enough periods to close
/// every lift. A lift of winding m passes through m distinct symbols labeled
/// y_word[0], so m is at most the largest label class. Requires a finite-to-one
/// code, so that path counts between fixed endpoints stay at most one.
inline std::uint64_t brute_force_fiber_size(const LabeledGraph& g, const Word& y_word) {
    const std::size_t n = g.size();
    std::size_t largest_class = 0;
    for (std::size_t y = 0; y < g.y_size(); ++y)
        largest_class = std::max(largest_class, g.label_class(static_cast<int>(y)).size());
    std::size_t periods = 1;
    for (std::size_t k = 2; k <= largest_class; ++k) periods = std::lcm(periods, k);
    const std::size_t q = periods * y_word.size();
    std::uint64_t total = 0;
    for (std::size_t start = 0; start < n; ++start) {
        if (g.label(static_cast<int>(start)) != y_word[0]) continue;
        // v[j]: paths x_0 = start, ..., x_i = j labeled by the first i+1 letters.
        std::vector<std::uint64_t> v(n, 0);
        v[start] = 1;
        for (std::size_t i = 1; i < q; ++i) {
            int y = y_word[i % y_word.size()];
            std::vector<std::uint64_t> w(n, 0);
            for (std::size_t j = 0; j < n; ++j) {
                if (!v[j]) continue;
                for (int t : g.successors(static_cast<int>(j)))
                    if (g.label(t) == y) w[static_cast<std::size_t>(t)] += v[j];
            }
            v = std::move(w);
        }
        for (std::size_t j = 0; j < n; ++j)
            if (v[j] && g.has_transition(static_cast<int>(j), static_cast<int>(start))) total += v[j];
    }
    return total;
}

/// Label words of length len read along paths, by direct path enumeration.
inline std::set<Word> brute_force_label_words(const LabeledGraph& g, int len) {
    std::set<Word> out;
    Word path, labels;
    auto extend = [&](auto&& self) -> void {
        if (static_cast<int>(path.size()) == len) {
            out.insert(labels);
            return;
        }
        for (int x = 0; x < static_cast<int>(g.size()); ++x) {
            if (!path.empty() && !g.has_transition(path.back(), x)) continue;
            path.push_back(x);
            labels.push_back(g.label(x));
            self(self);
            path.pop_back();
            labels.pop_back();
        }
    };
    extend(extend);
    return out;
}

/// trace(A^k) by repeated multiplication.
inline std::uint64_t trace_power(const LabeledGraph& g, int k) {
    const std::size_t n = g.size();
    std::vector<std::vector<std::uint64_t>> p(n, std::vector<std::uint64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) p[i][i] = 1;
    for (int s = 0; s < k; ++s) {
        std::vector<std::vector<std::uint64_t>> q(n, std::vector<std::uint64_t>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (p[i][j])
                    for (int t : g.successors(static_cast<int>(j))) q[i][static_cast<std::size_t>(t)] += p[i][j];
        p = std::move(q);
    }
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < n; ++i) t += p[i][i];
    return t;
}

}  // namespace fixtures
