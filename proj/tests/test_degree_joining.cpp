#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "fiberlift/automaton.hpp"
#include "fiberlift/error.hpp"
#include "fiberlift/joining.hpp"
#include "fiberlift/structure.hpp"
#include "support/fixtures.hpp"

using namespace fiberlift;

namespace {

LabeledGraph rule102() { return fixtures::ca(2, CAFamily::Sum); }

std::vector<std::string> names(const LabeledGraph& g) { return g.x_symbols(); }

std::vector<Word> permutations(int d) {
    std::vector<Word> out;
    Word p(static_cast<std::size_t>(d));
    std::iota(p.begin(), p.end(), 0);
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

int factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

TEST_CASE("fiber products") {
    auto pairs = fiber_product(rule102(), 2);
    CHECK(pairs.graph.size() == 8);
    for (const auto& t : pairs.tuples) CHECK(rule102().label(t[0]) == rule102().label(t[1]));

    auto single = fiber_product(rule102(), 1);
    CHECK(single.graph.size() == rule102().size());
    CHECK(single.graph.transition_count() == rule102().transition_count());

    auto diag = fiber_product(fixtures::full_shift(2), 2);
    CHECK(names(diag.graph) == std::vector<std::string>{"0|0", "1|1"});
}

TEST_CASE("fiber product transitions are exactly the componentwise ones") {
    auto g = fixtures::ca(3, CAFamily::Difference);
    auto t = fiber_product(g, 2);
    for (std::size_t a = 0; a < t.tuples.size(); ++a)
        for (std::size_t b = 0; b < t.tuples.size(); ++b) {
            bool componentwise = g.has_transition(t.tuples[a][0], t.tuples[b][0]) && g.has_transition(t.tuples[a][1], t.tuples[b][1]);
            CHECK(t.graph.has_transition(static_cast<int>(a), static_cast<int>(b)) == componentwise);
        }
}

TEST_CASE("degree joining of rule 102") {
    auto lambda = degree_joining_graph(rule102());
    CHECK(lambda.degree == 2);
    CHECK(names(lambda.lambda.graph) == std::vector<std::string>{"00|11", "01|10", "10|01", "11|00"});
    CHECK(lambda.projections_onto);
    CHECK(lambda.onto_image);
}

TEST_CASE("degree joining of the identity is X") {
    auto g = fixtures::golden_mean();
    auto lambda = degree_joining_graph(g);
    CHECK(lambda.degree == 1);
    CHECK(names(lambda.lambda.graph) == g.x_symbols());
    CHECK(lambda.lambda.graph.transitions() == g.transitions());
}

TEST_CASE("degree joining of the difference code has N * N! symbols") {
    for (int n = 2; n <= 4; ++n) {
        CAPTURE(n);
        auto lambda = degree_joining_graph(fixtures::ca(n, CAFamily::Difference));
        CHECK(lambda.lambda.graph.size() == static_cast<std::size_t>(n * factorial(n)));
    }
}

TEST_CASE("lambda paths over rule 102 windows") {
    auto lambda = degree_joining_graph(rule102());
    const auto& lg = lambda.lambda.graph;
    auto zeros = lambda_path_over(lambda, Word{0, 0, 0, 0});
    CHECK(zeros == Word(4, lg.find_x("00|11")));
    CHECK(lambda_path_over(lambda, Word{}).empty());
    auto ones = lambda_path_over(lambda, Word{1, 1, 1, 1});
    CHECK(lg.render_x(ones) == "01|10 10|01 01|10 10|01");
    CHECK(lg.label_word(ones) == Word{1, 1, 1, 1});
    CHECK(lg.is_path(ones));
}

TEST_CASE("lambda paths across checkpoint boundaries") {
    auto g = fixtures::ca(3, CAFamily::Difference);
    auto lambda = degree_joining_graph(g);
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> y(0, 2);
    Word window(10000);
    for (auto& s : window) s = y(rng);
    auto path = lambda_path_over(lambda, window);
    CHECK(path.size() == window.size());
    CHECK(lambda.lambda.graph.is_path(path));
    CHECK(lambda.lambda.graph.label_word(path) == window);
    for (int i = 0; i < 3; ++i) CHECK(g.is_path(lambda.lambda.coordinate(path, i)));
}

TEST_CASE("lambda_path_over rejects words outside the image") {
    auto g = fixtures::golden_mean();
    auto lambda = degree_joining_graph(g);
    try {
        lambda_path_over(lambda, Word{1, 1});
        FAIL("expected NoPath");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoPath);
    }
}

TEST_CASE("periodic degree joinings") {
    auto g = rule102();
    auto lambda = degree_joining_graph(g);
    auto zero = enumerate_periodic_degree_joinings(g, lambda, PeriodicOrbit{{0}});
    REQUIRE(zero.joinings.size() == 2);
    CHECK(lambda.lambda.graph.render_x(zero.joinings[0].orbit.word) == "00|11");
    CHECK(lambda.lambda.graph.render_x(zero.joinings[1].orbit.word) == "11|00");
    CHECK(zero.permutation_related);

    auto id = fixtures::full_shift(2);
    auto id_lambda = degree_joining_graph(id);
    auto single = enumerate_periodic_degree_joinings(id, id_lambda, PeriodicOrbit{{0, 1}});
    CHECK(single.joinings.size() == 1);
    CHECK(single.permutation_related);

    auto diff4 = fixtures::ca(4, CAFamily::Difference);
    auto d4 = degree_joining_graph(diff4);
    for (const auto& y : enumerate_image_orbits(diff4, 2)) {
        auto j = enumerate_periodic_degree_joinings(diff4, d4, y);
        CHECK(j.permutation_related);
        CHECK(j.tuple_points == 24);
    }
}

TEST_CASE("Lambda is closed under coordinate permutations") {
    for (const auto& f : fixtures::all_fixtures()) {
        CAPTURE(f.name);
        auto lambda = degree_joining_graph(f.graph);
        const auto& t = lambda.lambda;
        if (lambda.degree > 4) continue;
        for (const auto& p : permutations(lambda.degree)) {
            for (std::size_t s = 0; s < t.tuples.size(); ++s)
                CHECK(permute_symbol(t, static_cast<int>(s), p) >= 0);
            for (auto [a, b] : t.graph.transitions())
                CHECK(t.graph.has_transition(permute_symbol(t, a, p), permute_symbol(t, b, p)));
        }
    }
}

TEST_CASE("projection theorem and coordinate words") {
    std::mt19937 rng(11);
    for (const auto& f : fixtures::all_fixtures()) {
        CAPTURE(f.name);
        auto lambda = degree_joining_graph(f.graph);
        for (int i = 0; i < lambda.degree; ++i) {
            std::vector<int> seen;
            for (const auto& t : lambda.lambda.tuples) seen.push_back(t[static_cast<std::size_t>(i)]);
            std::sort(seen.begin(), seen.end());
            seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
            CHECK(seen.size() == f.graph.size());
        }
        for (const auto& t : lambda.lambda.tuples) {
            Word sorted = t;
            std::sort(sorted.begin(), sorted.end());
            CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
        }
        // Random Λ-words: their labels are Y-words and every coordinate is an X-path.
        const auto& lg = lambda.lambda.graph;
        auto dfa = determinize(f.graph);
        for (int trial = 0; trial < 20; ++trial) {
            Word path{std::uniform_int_distribution<int>(0, static_cast<int>(lg.size()) - 1)(rng)};
            for (int k = 0; k < 6; ++k) {
                const auto& s = lg.successors(path.back());
                path.push_back(s[std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(rng)]);
            }
            CHECK(dfa.accepts(lg.label_word(path)));
            for (int i = 0; i < lambda.degree; ++i) {
                auto x = lambda.lambda.coordinate(path, i);
                CHECK(f.graph.is_path(x));
                CHECK(f.graph.label_word(x) == lg.label_word(path));
            }
        }
    }
}

TEST_CASE("constant-to-one codes: every periodic point lifts to Lambda") {
    for (const auto& f : fixtures::all_fixtures()) {
        if (!f.constant_to_one) continue;
        CAPTURE(f.name);
        auto lambda = degree_joining_graph(f.graph);
        for (const auto& y : enumerate_image_orbits(f.graph, 6)) {
            auto fiber = periodic_fiber(lambda.lambda.graph, y);
            CHECK(fiber.fiber_size > 0);
        }
    }
}

TEST_CASE("periodic degree joinings are unique up to permutation") {
    for (const auto& f : fixtures::all_fixtures()) {
        CAPTURE(f.name);
        auto lambda = degree_joining_graph(f.graph);
        for (const auto& y : enumerate_image_orbits(f.graph, 4)) {
            auto base = periodic_fiber(f.graph, y);
            if (base.fiber_size != lambda.degree) {
                CHECK_THROWS_AS(enumerate_periodic_degree_joinings(f.graph, lambda, y), Error);
                continue;
            }
            auto j = enumerate_periodic_degree_joinings(f.graph, lambda, y);
            CHECK(j.permutation_related);
            CHECK(j.tuple_points == factorial(lambda.degree));
        }
    }
}
