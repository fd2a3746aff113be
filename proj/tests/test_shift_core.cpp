#include <doctest.h>

#include <cmath>

#include "fiberlift/automaton.hpp"
#include "fiberlift/error.hpp"
#include "fiberlift/measures.hpp"
#include "fiberlift/recode.hpp"
#include "fiberlift/structure.hpp"
#include "support/fixtures.hpp"

using namespace fiberlift;

namespace {

LabeledGraph two_loops() {
    return LabeledGraph::from_names({"a", "b"}, {{"a", "a"}, {"b", "b"}}, {"0", "0"});
}

SlidingBlockCode rule102_code() {
    SlidingBlockCode c;
    c.memory = 0;
    c.anticipation = 1;
    c.alphabet = {"0", "1"};
    c.y_symbols = {"0", "1"};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) c.block_map[Word{a, b}] = (a + b) % 2;
    return c;
}

/// Random irreducible 1-step SFT on k symbols with a random sliding block code.
SlidingBlockCode random_code(std::mt19937& rng, int k, int memory, int anticipation) {
    SlidingBlockCode c;
    c.memory = memory;
    c.anticipation = anticipation;
    for (int i = 0; i < k; ++i) c.alphabet.push_back(std::string(1, static_cast<char>('a' + i)));
    std::vector<std::pair<int, int>> t;
    std::bernoulli_distribution coin(0.5);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            if (b == (a + 1) % k || coin(rng)) t.emplace_back(a, b);
    c.transitions = t;
    c.y_symbols = {"0", "1", "2"};
    std::uniform_int_distribution<int> lab(0, 2);
    for (const auto& w : c.allowed_blocks()) c.block_map[w] = lab(rng);
    return c;
}

}  // namespace

TEST_CASE("analyze_graph on small examples") {
    auto full = fixtures::full_shift(2);
    auto r = analyze_graph(full);
    CHECK(r.is_irreducible);
    REQUIRE(r.components.size() == 1);
    CHECK(r.components[0].period == 1);

    auto golden = analyze_graph(fixtures::golden_mean());
    CHECK(golden.is_irreducible);
    CHECK(golden.components[0].period == 1);

    auto loops = analyze_graph(two_loops());
    CHECK(loops.components.size() == 2);
    CHECK_FALSE(loops.is_irreducible);
}

TEST_CASE("analyze_graph trims and reports periods") {
    auto g = LabeledGraph::from_names({"a", "b", "c"}, {{"a", "b"}, {"b", "a"}, {"b", "c"}}, {"0", "1", "0"});
    auto r = analyze_graph(g);
    CHECK_FALSE(r.is_essential);
    CHECK(r.removed_symbols == std::vector<int>{2});
    REQUIRE(r.components.size() == 1);
    CHECK(r.components[0].period == 2);
    // The dangling symbol keeps the input graph from being irreducible; its trim is.
    CHECK_FALSE(r.is_irreducible);
    CHECK(is_irreducible(g.trimmed()));

    auto dead = LabeledGraph::from_names({"a", "b"}, {{"a", "b"}}, {"0", "0"});
    CHECK_THROWS_AS(analyze_graph(dead), Error);
    try {
        analyze_graph(dead);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EmptyAfterTrim);
    }
    CHECK_THROWS_AS(analyze_graph(LabeledGraph({}, {}, {}, {})), Error);
}

TEST_CASE("entropy of full shifts and the golden mean") {
    CHECK(std::abs(entropy(fixtures::full_shift(2)) - std::log(2.0)) <= 1e-10);
    CHECK(std::abs(entropy(fixtures::full_shift(5)) - std::log(5.0)) <= 1e-10);
    CHECK(std::abs(entropy(fixtures::golden_mean()) - std::log((1 + std::sqrt(5.0)) / 2)) <= 1e-10);
    try {
        entropy(two_loops());
        FAIL("expected NotIrreducible");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotIrreducible);
    }
}

TEST_CASE("entropy of a periodic graph") {
    // A 3-cycle has entropy 0 and period 3.
    auto g = LabeledGraph::from_names({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}, {"0", "0", "0"});
    CHECK(std::abs(entropy(g)) <= 1e-10);
    CHECK(analyze_graph(g).components[0].period == 3);
}

TEST_CASE("recode rule 102") {
    auto g = recode_to_one_block(rule102_code());
    CHECK(g.x_symbols() == std::vector<std::string>{"00", "01", "10", "11"});
    CHECK(g.transition_count() == 8);
    CHECK(g.y_name(g.label(g.find_x("00"))) == "0");
    CHECK(g.y_name(g.label(g.find_x("01"))) == "1");
    CHECK(g.y_name(g.label(g.find_x("10"))) == "1");
    CHECK(g.y_name(g.label(g.find_x("11"))) == "0");
    CHECK(g.has_transition(g.find_x("01"), g.find_x("10")));
    CHECK_FALSE(g.has_transition(g.find_x("01"), g.find_x("01")));
    REQUIRE(g.recoding());
    CHECK(g.recoding()->memory == 0);
    CHECK(g.recoding()->base_symbol(g.find_x("10")) == 1);
}

TEST_CASE("recode a 1-block code is the identity presentation") {
    SlidingBlockCode c;
    c.alphabet = {"a", "b"};
    c.transitions = std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 0}};
    c.y_symbols = {"a", "b"};
    c.block_map[Word{0}] = 0;
    c.block_map[Word{1}] = 1;
    auto g = recode_to_one_block(c);
    auto golden = fixtures::golden_mean();
    CHECK(g.x_symbols() == golden.x_symbols());
    CHECK(g.transitions() == golden.transitions());
    CHECK(g.labels() == golden.labels());
}

TEST_CASE("recode the difference code mod 3") {
    auto g = fixtures::ca(3, CAFamily::Difference);
    CHECK(g.size() == 9);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            auto name = std::to_string(a) + std::to_string(b);
            CHECK(g.y_name(g.label(g.find_x(name))) == std::to_string(((b - a) % 3 + 3) % 3));
        }
}

TEST_CASE("recode rejects a partial block map") {
    auto c = rule102_code();
    c.block_map.erase(Word{1, 1});
    CHECK_THROWS_AS(recode_to_one_block(c), Error);
}

TEST_CASE("determinize: rule 102 image is the full 2-shift") {
    auto g = recode_to_one_block(rule102_code());
    auto dfa = determinize(g);
    for (int len = 1; len <= 6; ++len)
        for (const auto& w : all_words(2, len)) CHECK(dfa.accepts(w));
    CHECK(std::abs(dfa.entropy() - std::log(2.0)) <= 1e-10);
}

TEST_CASE("determinize: identity and constant labelings") {
    auto id = determinize(fixtures::full_shift(2));
    CHECK(id.essential_states().size() == 2);
    CHECK(std::abs(id.entropy() - std::log(2.0)) <= 1e-10);

    auto constant = determinize(fixtures::full_shift(2, false));
    CHECK(constant.size() == 1);
    CHECK(constant.transitions[0][0] == 0);
    CHECK(std::abs(constant.entropy()) <= 1e-12);
}

TEST_CASE("enumerate_periodic_orbits examples") {
    auto full = enumerate_periodic_orbits(fixtures::full_shift(2), 2);
    CHECK(full == std::vector<PeriodicOrbit>{{{0}}, {{1}}, {{0, 1}}});
    auto golden = enumerate_periodic_orbits(fixtures::golden_mean(), 2);
    CHECK(golden == std::vector<PeriodicOrbit>{{{0}}, {{0, 1}}});
    for (int n = 1; n <= 5; ++n) CHECK(enumerate_periodic_orbits(fixtures::full_shift(n), 1).size() == static_cast<std::size_t>(n));
}

TEST_CASE("periodic orbit counts satisfy the trace formula") {
    auto check = [](const LabeledGraph& g) {
        const int max = 6;
        auto orbits = enumerate_periodic_orbits(g, max);
        for (const auto& o : orbits) {
            CHECK(is_primitive(o.word));
            CHECK(least_rotation_index(o.word) == 0);
        }
        for (int p = 1; p <= max; ++p) {
            std::uint64_t points = 0;
            for (const auto& o : orbits)
                if (p % static_cast<int>(o.period()) == 0) points += o.period();
            CHECK(points == fixtures::trace_power(g, p));
        }
    };
    for (const auto& f : fixtures::all_fixtures()) {
        if (f.graph.size() > 12) continue;
        CAPTURE(f.name);
        check(f.graph);
    }
    check(two_loops());
}

TEST_CASE("determinize accepts exactly the label words") {
    for (const auto& f : fixtures::all_fixtures()) {
        if (f.graph.size() > 12) continue;
        CAPTURE(f.name);
        auto dfa = determinize(f.graph);
        for (int len = 1; len <= 6; ++len) {
            auto words = fixtures::brute_force_label_words(f.graph, len);
            for (const auto& w : all_words(f.graph.y_size(), len)) CHECK(dfa.accepts(w) == (words.count(w) > 0));
        }
    }
}

TEST_CASE("entropy is invariant under recoding") {
    std::mt19937 rng(7);
    int tested = 0;
    for (int trial = 0; trial < 30; ++trial) {
        int k = 2 + trial % 3;
        int memory = trial % 2, anticipation = (trial / 2) % 2 + (trial % 5 == 0 ? 1 : 0);
        auto c = random_code(rng, k, memory, anticipation);
        std::vector<int> ident(static_cast<std::size_t>(k));
        std::iota(ident.begin(), ident.end(), 0);
        LabeledGraph domain(c.alphabet, *c.transitions, ident, c.alphabet);
        auto recoded = recode_to_one_block(c);
        auto h = entropy(domain.trimmed());
        auto h2 = entropy(recoded.trimmed());
        CHECK(std::abs(h - h2) <= 1e-9);
        ++tested;
    }
    CHECK(tested == 30);
}

TEST_CASE("canonical orbit and rotations") {
    CHECK(canonical_orbit(Word{1, 0, 1, 0}).word == Word{0, 1});
    CHECK(canonical_orbit(Word{2, 1, 0}).word == Word{0, 2, 1});
    CHECK(rotate(Word{1, 2, 3}, 1) == Word{2, 3, 1});
    CHECK_FALSE(is_primitive(Word{0, 0}));
}
