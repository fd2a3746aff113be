#include <doctest.h>

#include <cmath>

#include "fiberlift/ca_examples.hpp"
#include "fiberlift/error.hpp"
#include "fiberlift/measures.hpp"
#include "support/fixtures.hpp"

using namespace fiberlift;

namespace {

Rational q(const char* s) { return parse_rational(s); }

BernoulliMeasure bernoulli2(const char* p) { return BernoulliMeasure({"0", "1"}, {1 - q(p), q(p)}); }

MarkovMeasure golden_markov() { return MarkovMeasure({"a", "b"}, {{q("1/2"), q("1/2")}, {q("1"), q("0")}}); }

}  // namespace

TEST_CASE("rational parsing") {
    CHECK(q("3/10") == Rational(3, 10));
    CHECK(q("6/20") == Rational(3, 10));
    CHECK(to_string(q("6/20")) == "3/10");
    CHECK(q("1") == 1);
    CHECK(q(" 2 / 4 ") == Rational(1, 2));
    CHECK_THROWS_AS(q("1/0"), Error);
    CHECK_THROWS_AS(q("x"), Error);
    CHECK_THROWS_AS(q(""), Error);
}

TEST_CASE("measure validation") {
    CHECK_THROWS_AS(BernoulliMeasure({"0", "1"}, {q("1/2"), q("1/3")}), Error);
    CHECK_THROWS_AS(BernoulliMeasure({"0", "1"}, {q("3/2"), q("-1/2")}), Error);
    CHECK_THROWS_AS(MarkovMeasure({"a", "b"}, {{q("1/2"), q("1/2")}, {q("1/3"), q("1/3")}}), Error);
    // Two closed classes: the stationary vector is not unique.
    CHECK_THROWS_AS(MarkovMeasure({"a", "b"}, {{q("1"), q("0")}, {q("0"), q("1")}}), Error);
    CHECK_NOTHROW(MarkovMeasure({"a", "b"}, {{q("1"), q("0")}, {q("0"), q("1")}}, std::vector<Rational>{q("1/4"), q("3/4")}));
    CHECK_THROWS_AS(MarkovMeasure({"a", "b"}, {{q("1/2"), q("1/2")}, {q("1"), q("0")}}, std::vector<Rational>{q("1/2"), q("1/2")}),
                    Error);
}

TEST_CASE("cylinder probabilities") {
    CHECK(cylinder_probability(bernoulli2("3/10"), Word{1, 1}) == q("9/100"));
    CHECK(cylinder_probability(PeriodicMeasure({"0", "1"}, {0, 1}), Word{0, 1, 0}) == q("1/2"));
    auto m = golden_markov();
    CHECK(m.stationary() == std::vector<Rational>{q("2/3"), q("1/3")});
    CHECK(cylinder_probability(m, Word{0, 1}) == q("1/3"));
    CHECK(cylinder_probability(m, Word{1, 1}) == 0);
    CHECK(cylinder_probability(m, Word{}) == 1);
}

TEST_CASE("pushforward cylinders") {
    auto g = fixtures::ca(2, CAFamily::Sum);
    CHECK(pushforward_cylinder(bernoulli2("3/10"), g, Word{1}) == q("21/50"));
    CHECK(pushforward_cylinder(bernoulli2("1/2"), g, Word{1}) == q("1/2"));
    CHECK(pushforward_cylinder(bernoulli2("3/10"), g, Word{}) == 1);
    // Unrecoded graph with a Markov measure on its symbols.
    auto golden = fixtures::golden_mean();
    CHECK(pushforward_cylinder(golden_markov(), golden, Word{0, 1}) == q("1/3"));
}

TEST_CASE("pushforward is consistent in the Y alphabet") {
    auto g = fixtures::ca(3, CAFamily::Sum);
    BernoulliMeasure mu({"0", "1", "2"}, {q("1/2"), q("1/3"), q("1/6")});
    for (int len = 0; len <= 3; ++len)
        for (const auto& w : all_words(3, len)) {
            Rational sum = 0;
            for (int a = 0; a < 3; ++a) {
                Word wa = w;
                wa.push_back(a);
                sum += pushforward_cylinder(mu, g, wa);
            }
            CHECK(sum == pushforward_cylinder(mu, g, w));
        }
}

TEST_CASE("Kolmogorov consistency and shift invariance on random probes") {
    std::mt19937 rng(2024);
    for (int probe = 0; probe < 300; ++probe) {
        auto m = fixtures::random_measure(rng, probe % 3);
        CHECK(fixtures::kolmogorov_probe(rng, m));
    }
}

TEST_CASE("supported_on and support_subgraph") {
    auto golden = fixtures::golden_mean();
    CHECK(supported_on(golden_markov(), golden));
    auto full = fixtures::full_shift(2);
    CHECK_FALSE(supported_on(BernoulliMeasure({"a", "b"}, {q("1/2"), q("1/2")}), golden));
    CHECK_THROWS_AS(supported_on(BernoulliMeasure({"x", "y"}, {q("1/2"), q("1/2")}), full), Error);
    auto rule = fixtures::ca(2, CAFamily::Sum);
    CHECK(supported_on(bernoulli2("3/10"), rule));
    auto point = support_subgraph(bernoulli2("1"), rule);
    CHECK(point.x_symbols() == std::vector<std::string>{"11"});
}

TEST_CASE("sampling") {
    auto orbit = sample_path(PeriodicMeasure({"0", "1"}, {0, 1}), 4, 17);
    CHECK((orbit == Word{0, 1, 0, 1} || orbit == Word{1, 0, 1, 0}));
    CHECK(sample_path(bernoulli2("1/2"), 100, 5) == sample_path(bernoulli2("1/2"), 100, 5));
    CHECK(sample_path(bernoulli2("1/2"), 100, 5) != sample_path(bernoulli2("1/2"), 100, 6));

    auto coin = sample_path(bernoulli2("1/2"), 1000000, 1);
    EmpiricalDistribution e(2, 2, coin);
    CHECK(std::abs(e.frequency(Word{1}) - 0.5) <= 0.005);

    auto chain = sample_path(golden_markov(), 1000000, 2);
    EmpiricalDistribution f(2, 2, chain);
    CHECK(std::abs(f.frequency(Word{0, 0}) - 1.0 / 3) <= 0.005);
    CHECK(f.count(Word{1, 1}) == 0);
    CHECK_THROWS_AS(sample_path(bernoulli2("1/2"), 0, 1), Error);
}

TEST_CASE("empirical counts sum to T - k + 1") {
    auto sample = sample_path(BernoulliMeasure({"0", "1", "2"}, {q("1/3"), q("1/3"), q("1/3")}), 1000, 3);
    EmpiricalDistribution e(3, 3, sample);
    for (int k = 1; k <= 3; ++k) {
        std::uint64_t total = 0;
        for (const auto& w : all_words(3, k)) total += e.count(w);
        CHECK(total == 1000 - static_cast<std::uint64_t>(k) + 1);
    }
}

TEST_CASE("two-point factor: deterministic cycle oracle") {
    for (int n = 2; n <= 8; ++n) {
        CAPTURE(n);
        CHECK(has_two_point_factor(fixtures::cycle_chain(n)) == (n % 2 == 0));
        Word orbit;
        for (int i = 0; i < n; ++i) orbit.push_back(i % 2);
        if (is_primitive(orbit)) CHECK(has_two_point_factor(PeriodicMeasure({"0", "1"}, orbit)) == (n % 2 == 0));
    }
    CHECK_FALSE(has_two_point_factor(bernoulli2("3/10")));
    CHECK_FALSE(has_two_point_factor(golden_markov()));
    // Bipartite chain: a <-> {b, c}.
    MarkovMeasure bipartite({"a", "b", "c"}, {{0, q("1/2"), q("1/2")}, {1, 0, 0}, {1, 0, 0}});
    CHECK(has_two_point_factor(bipartite));
    MarkovMeasure reducible({"a", "b"}, {{1, 0}, {0, 1}}, std::vector<Rational>{q("1/2"), q("1/2")});
    try {
        has_two_point_factor(reducible);
        FAIL("expected NotErgodic");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotErgodic);
    }
}

TEST_CASE("compare_measures") {
    auto c = compare_measures(Measure(bernoulli2("3/10")), Measure(bernoulli2("7/10")), 1);
    CHECK_FALSE(c.equal);
    CHECK(c.witness == Word{0});
    CHECK(c.first_mass == q("7/10"));
    CHECK(c.second_mass == q("3/10"));
    auto one = compare_measures(Measure(bernoulli2("3/10")), Measure(bernoulli2("7/10")), 1);
    CHECK(one.witness.size() == 1);
    CHECK(compare_measures(Measure(bernoulli2("1/2")), Measure(bernoulli2("1/2")), 6).equal);

    BernoulliMeasure mu({"0", "1", "2", "3"}, {q("1/8"), q("3/8"), q("1/8"), q("3/8")});
    auto s1 = compare_measures(Measure(add_constant(mu, 1)), Measure(mu), 1);
    CHECK_FALSE(s1.equal);
    CHECK(compare_measures(Measure(add_constant(mu, 2)), Measure(mu), 5).equal);
}

TEST_CASE("counter RNG is a function of seed and counter") {
    CounterRng a(9), b(9), c(10);
    CHECK(a.bits(5) == b.bits(5));
    CHECK(a.bits(5) != c.bits(5));
    CHECK(a.bits(5) != a.bits(6));
    double u = a.uniform(123);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
}
