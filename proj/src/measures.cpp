#include "fiberlift/measures.hpp"

#include <algorithm>
#include <sstream>

#include "fiberlift/code_analysis.hpp"
#include "fiberlift/error.hpp"
#include "fiberlift/structure.hpp"

namespace fiberlift {

namespace {

void check_distribution(const std::vector<Rational>& p, const char* what) {
    Rational sum = 0;
    for (const auto& x : p) {
        if (x < 0) throw Error(ErrorKind::InvalidInput, std::string(what) + " has a negative entry");
        sum += x;
    }
    if (sum != 1) throw Error(ErrorKind::InvalidInput, std::string(what) + " does not sum to 1");
}

/// Unique solution of πP = π, Σπ = 1 by exact Gaussian elimination.
std::optional<std::vector<Rational>> solve_stationary(const std::vector<std::vector<Rational>>& P) {
    const std::size_t n = P.size();
    // Rows: n balance equations then the normalization; columns: n unknowns + rhs.
    std::vector<std::vector<Rational>> a(n + 1, std::vector<Rational>(n + 1, 0));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) a[j][i] = P[i][j];
        a[j][j] -= 1;
    }
    for (std::size_t i = 0; i < n; ++i) a[n][i] = 1;
    a[n][n] = 1;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = row;
        while (pivot <= n && a[pivot][col] == 0) ++pivot;
        if (pivot > n) return std::nullopt;
        std::swap(a[pivot], a[row]);
        Rational inv = 1 / a[row][col];
        for (auto& x : a[row]) x *= inv;
        for (std::size_t r = 0; r <= n; ++r) {
            if (r == row || a[r][col] == 0) continue;
            Rational f = a[r][col];
            for (std::size_t c = col; c <= n; ++c) a[r][c] -= f * a[row][c];
        }
        ++row;
    }
    for (std::size_t r = row; r <= n; ++r)
        if (a[r][n] != 0) return std::nullopt;
    std::vector<Rational> pi(n);
    for (std::size_t i = 0; i < n; ++i) pi[i] = a[i][n];
    return pi;
}

int find_name(const std::vector<std::string>& v, const std::string& s) {
    auto it = std::find(v.begin(), v.end(), s);
    return it == v.end() ? -1 : static_cast<int>(it - v.begin());
}

/// Measure alphabet index for every letter the graph paths are written in.
std::vector<int> letter_map(const Measure& m, const LabeledGraph& g) {
    const auto& letters = g.recoding() ? g.recoding()->base_alphabet : g.x_symbols();
    std::vector<int> out;
    for (const auto& l : letters) {
        int i = find_name(alphabet(m), l);
        if (i < 0) throw Error(ErrorKind::InvalidInput, "measure alphabet lacks symbol " + l);
        out.push_back(i);
    }
    return out;
}

/// Letters covered by the path of X-symbols (blocks expanded for recodings).
Word path_letters(const LabeledGraph& g, std::span<const int> path) {
    const auto& rec = g.recoding();
    if (!rec) return Word(path.begin(), path.end());
    Word out = rec->blocks[static_cast<std::size_t>(path.front())];
    for (std::size_t i = 1; i < path.size(); ++i) out.push_back(rec->blocks[static_cast<std::size_t>(path[i])].back());
    return out;
}

std::vector<double> cumulative(const std::vector<Rational>& p) {
    std::vector<double> c;
    double acc = 0;
    for (const auto& x : p) {
        acc += x.get_d();
        c.push_back(acc);
    }
    return c;
}

int draw(const std::vector<double>& cdf, double u) {
    double scaled = u * cdf.back();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), scaled);
    auto i = static_cast<int>(it - cdf.begin());
    // Skip zero-probability slots at the boundary.
    i = std::min(i, static_cast<int>(cdf.size()) - 1);
    while (i > 0 && cdf[static_cast<std::size_t>(i)] == cdf[static_cast<std::size_t>(i - 1)]) --i;
    return i;
}

bool strongly_connected_on(const std::vector<std::vector<int>>& succ, const std::vector<int>& nodes) {
    std::vector<std::vector<int>> local(nodes.size());
    std::vector<int> idx(succ.size(), -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) idx[static_cast<std::size_t>(nodes[i])] = static_cast<int>(i);
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (int t : succ[static_cast<std::size_t>(nodes[i])])
            if (idx[static_cast<std::size_t>(t)] >= 0) local[i].push_back(idx[static_cast<std::size_t>(t)]);
    return strongly_connected_components(local).size() == 1;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty()) throw Error(ErrorKind::InvalidInput, "empty rational");
    Rational r;
    auto valid = [](const std::string& part) {
        if (part.empty()) return false;
        std::size_t i = part[0] == '-' || part[0] == '+' ? 1 : 0;
        return i < part.size() && std::all_of(part.begin() + static_cast<long>(i), part.end(), ::isdigit);
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!valid(s)) throw Error(ErrorKind::InvalidInput, "malformed rational " + s);
        r = Rational(mpz_class(s[0] == '+' ? s.substr(1) : s));
    } else {
        auto num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!valid(num) || !valid(den)) throw Error(ErrorKind::InvalidInput, "malformed rational " + s);
        mpz_class d(den[0] == '+' ? den.substr(1) : den);
        if (d == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in " + s);
        r = Rational(mpz_class(num[0] == '+' ? num.substr(1) : num), d);
    }
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Rational ratio(long n, long d) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

BernoulliMeasure::BernoulliMeasure(std::vector<std::string> alphabet, std::vector<Rational> probabilities)
    : alphabet_(std::move(alphabet)), probabilities_(std::move(probabilities)) {
    if (alphabet_.size() != probabilities_.size() || alphabet_.empty())
        throw Error(ErrorKind::InvalidInput, "probability vector must match the alphabet");
    check_distribution(probabilities_, "probability vector");
}

MarkovMeasure::MarkovMeasure(std::vector<std::string> states, std::vector<std::vector<Rational>> transition_matrix,
                             std::optional<std::vector<Rational>> stationary)
    : states_(std::move(states)), matrix_(std::move(transition_matrix)) {
    const std::size_t n = states_.size();
    if (n == 0 || matrix_.size() != n) throw Error(ErrorKind::InvalidInput, "transition matrix must be square over the states");
    for (const auto& row : matrix_) {
        if (row.size() != n) throw Error(ErrorKind::InvalidInput, "transition matrix must be square over the states");
        check_distribution(row, "transition row");
    }
    if (stationary) {
        stationary_ = std::move(*stationary);
        if (stationary_.size() != n) throw Error(ErrorKind::InvalidInput, "stationary vector has wrong length");
        check_distribution(stationary_, "stationary vector");
    } else {
        auto solved = solve_stationary(matrix_);
        if (!solved) throw Error(ErrorKind::InvalidInput, "stationary vector is not unique; supply one explicitly");
        stationary_ = std::move(*solved);
    }
    for (std::size_t j = 0; j < n; ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i < n; ++i) s += stationary_[i] * matrix_[i][j];
        if (s != stationary_[j]) throw Error(ErrorKind::InvalidInput, "vector is not stationary for the chain");
    }
}

PeriodicMeasure::PeriodicMeasure(std::vector<std::string> alphabet, Word orbit)
    : alphabet_(std::move(alphabet)), orbit_(std::move(orbit)) {
    if (orbit_.empty()) throw Error(ErrorKind::InvalidInput, "empty orbit");
    for (int s : orbit_)
        if (s < 0 || s >= static_cast<int>(alphabet_.size())) throw Error(ErrorKind::InvalidInput, "orbit symbol outside alphabet");
}

const std::vector<std::string>& alphabet(const Measure& m) {
    return std::visit([](const auto& x) -> const std::vector<std::string>& { return x.alphabet(); }, m);
}

std::string describe(const Measure& m) {
    std::ostringstream os;
    if (auto* b = std::get_if<BernoulliMeasure>(&m)) {
        os << "bernoulli(";
        for (std::size_t i = 0; i < b->probabilities().size(); ++i) os << (i ? "," : "") << to_string(b->probabilities()[i]);
        os << ")";
    } else if (auto* mk = std::get_if<MarkovMeasure>(&m)) {
        os << "markov(" << mk->alphabet().size() << " states)";
    } else {
        const auto& p = std::get<PeriodicMeasure>(m);
        os << "periodic(" << join_symbols(p.alphabet(), p.orbit()) << ")";
    }
    return os.str();
}

Rational cylinder_probability(const Measure& m, std::span<const int> word) {
    const auto k = static_cast<int>(alphabet(m).size());
    for (int s : word)
        if (s < 0 || s >= k) return 0;
    if (word.empty()) return 1;
    if (auto* b = std::get_if<BernoulliMeasure>(&m)) {
        Rational r = 1;
        for (int s : word) r *= b->probabilities()[static_cast<std::size_t>(s)];
        return r;
    }
    if (auto* mk = std::get_if<MarkovMeasure>(&m)) {
        Rational r = mk->stationary()[static_cast<std::size_t>(word[0])];
        for (std::size_t i = 1; i < word.size() && r != 0; ++i) r *= mk->probability(word[i - 1], word[i]);
        return r;
    }
    const auto& p = std::get<PeriodicMeasure>(m);
    const std::size_t period = p.period();
    std::size_t hits = 0;
    for (std::size_t phase = 0; phase < period; ++phase) {
        bool match = true;
        for (std::size_t j = 0; j < word.size() && match; ++j) match = p.orbit()[(phase + j) % period] == word[j];
        if (match) ++hits;
    }
    return ratio(static_cast<long>(hits), static_cast<long>(period));
}

CylinderMeasure as_cylinder_measure(const Measure& m) {
    return CylinderMeasure{alphabet(m), [m](std::span<const int> w) { return cylinder_probability(m, w); }, describe(m)};
}

Rational pushforward_cylinder(const Measure& m, const LabeledGraph& g, std::span<const int> y_word) {
    if (y_word.empty()) return 1;
    auto map = letter_map(m, g);
    Rational total = 0;
    for (const auto& u : preimage_base_words(g, y_word)) {
        Word mapped;
        for (int l : u) mapped.push_back(map[static_cast<std::size_t>(l)]);
        total += cylinder_probability(m, mapped);
    }
    return total;
}

bool supported_on(const Measure& m, const LabeledGraph& g) {
    auto map = letter_map(m, g);
    std::vector<int> to_letter(alphabet(m).size(), -1);
    for (std::size_t l = 0; l < map.size(); ++l) to_letter[static_cast<std::size_t>(map[l])] = static_cast<int>(l);
    const int span_len = (g.recoding() ? g.recoding()->block_length() : 1) + 1;
    // Paths of two symbols, written as letters; every positive word of that length must be one.
    std::vector<Word> allowed;
    for (auto [a, b] : g.transitions()) {
        Word two{a, b};
        allowed.push_back(path_letters(g, two));
    }
    std::sort(allowed.begin(), allowed.end());
    for (const auto& w : all_words(alphabet(m).size(), span_len)) {
        if (cylinder_probability(m, w) == 0) continue;
        Word letters;
        for (int s : w) {
            if (to_letter[static_cast<std::size_t>(s)] < 0) return false;
            letters.push_back(to_letter[static_cast<std::size_t>(s)]);
        }
        if (!std::binary_search(allowed.begin(), allowed.end(), letters)) return false;
    }
    return true;
}

LabeledGraph support_subgraph(const Measure& m, const LabeledGraph& g) {
    auto map = letter_map(m, g);
    auto mass = [&](std::span<const int> path) {
        Word w;
        for (int l : path_letters(g, path)) w.push_back(map[static_cast<std::size_t>(l)]);
        return cylinder_probability(m, w);
    };
    std::vector<std::pair<int, int>> kept;
    for (auto [a, b] : g.transitions()) {
        Word two{a, b};
        if (mass(two) > 0) kept.emplace_back(a, b);
    }
    return g.with_transitions(kept).trimmed();
}

std::uint64_t CounterRng::bits(std::uint64_t counter) const {
    // splitmix64 finalizer over a (seed, counter) mix.
    std::uint64_t z = seed_ * 0x9E3779B97F4A7C15ULL + (counter + 1) * 0xD1B54A32D192ED03ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double CounterRng::uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

Word sample_path(const Measure& m, std::size_t length, std::uint64_t seed) {
    if (length < 1) throw Error(ErrorKind::InvalidInput, "sample length must be at least 1");
    CounterRng rng(seed);
    Word out(length);
    if (auto* b = std::get_if<BernoulliMeasure>(&m)) {
        auto cdf = cumulative(b->probabilities());
        for (std::size_t i = 0; i < length; ++i) out[i] = draw(cdf, rng.uniform(i));
    } else if (auto* mk = std::get_if<MarkovMeasure>(&m)) {
        std::vector<std::vector<double>> rows;
        for (const auto& row : mk->transition_matrix()) rows.push_back(cumulative(row));
        out[0] = draw(cumulative(mk->stationary()), rng.uniform(0));
        for (std::size_t i = 1; i < length; ++i)
            out[i] = draw(rows[static_cast<std::size_t>(out[i - 1])], rng.uniform(i));
    } else {
        const auto& p = std::get<PeriodicMeasure>(m);
        auto phase = static_cast<std::size_t>(rng.uniform(0) * static_cast<double>(p.period()));
        for (std::size_t i = 0; i < length; ++i) out[i] = p.orbit()[(phase + i) % p.period()];
    }
    return out;
}

bool has_two_point_factor(const MarkovMeasure& m) {
    const std::size_t n = m.alphabet().size();
    std::vector<int> support;
    for (std::size_t s = 0; s < n; ++s)
        if (m.stationary()[s] > 0) support.push_back(static_cast<int>(s));
    std::vector<std::vector<int>> succ(n);
    for (int s : support)
        for (int t : support)
            if (m.probability(s, t) > 0) succ[static_cast<std::size_t>(s)].push_back(t);
    if (!strongly_connected_on(succ, support)) throw Error(ErrorKind::NotErgodic, "support chain is not irreducible");
    // Product with the parity flip: node 2s+b steps to 2t+(1-b).
    std::vector<std::vector<int>> product(2 * n);
    std::vector<int> nodes;
    for (int s : support) {
        for (int b = 0; b < 2; ++b) {
            nodes.push_back(2 * s + b);
            for (int t : succ[static_cast<std::size_t>(s)]) product[static_cast<std::size_t>(2 * s + b)].push_back(2 * t + (1 - b));
        }
    }
    return !strongly_connected_on(product, nodes);
}

bool has_two_point_factor(const BernoulliMeasure& m) {
    const std::size_t n = m.alphabet().size();
    std::vector<std::vector<Rational>> rows(n, m.probabilities());
    return has_two_point_factor(MarkovMeasure(m.alphabet(), rows, m.probabilities()));
}

bool has_two_point_factor(const PeriodicMeasure& m) {
    // The orbit as a deterministic chain on its positions.
    const std::size_t p = m.period();
    std::vector<std::string> positions;
    std::vector<std::vector<Rational>> rows(p, std::vector<Rational>(p, 0));
    for (std::size_t i = 0; i < p; ++i) {
        positions.push_back(std::to_string(i));
        rows[i][(i + 1) % p] = 1;
    }
    std::vector<Rational> uniform(p, ratio(1, static_cast<long>(p)));
    return has_two_point_factor(MarkovMeasure(positions, rows, uniform));
}

std::vector<Word> all_words(std::size_t k, int length) {
    std::vector<Word> out;
    if (length < 0) return out;
    Word w(static_cast<std::size_t>(length), 0);
    while (true) {
        out.push_back(w);
        int i = length - 1;
        while (i >= 0 && w[static_cast<std::size_t>(i)] == static_cast<int>(k) - 1) w[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) break;
        ++w[static_cast<std::size_t>(i)];
    }
    return out;
}

MeasureComparison compare_measures(const CylinderMeasure& a, const CylinderMeasure& b, int max_length) {
    if (a.alphabet != b.alphabet) throw Error(ErrorKind::InvalidInput, "measures live on different alphabets");
    MeasureComparison out;
    for (int len = 1; len <= max_length; ++len) {
        for (const auto& w : all_words(a.alphabet.size(), len)) {
            Rational x = a.mass(w), y = b.mass(w);
            if (x != y) {
                out.equal = false;
                out.witness = w;
                out.first_mass = x;
                out.second_mass = y;
                return out;
            }
        }
    }
    return out;
}

MeasureComparison compare_measures(const Measure& a, const Measure& b, int max_length) {
    return compare_measures(as_cylinder_measure(a), as_cylinder_measure(b), max_length);
}

EmpiricalDistribution::EmpiricalDistribution(std::size_t alphabet_size, int depth) : k_(alphabet_size), depth_(depth) {
    if (depth < 1) throw Error(ErrorKind::InvalidInput, "cylinder depth must be at least 1");
    std::size_t size = 1;
    for (int len = 1; len <= depth; ++len) {
        size *= k_;
        counts_.emplace_back(size, 0);
    }
}

EmpiricalDistribution::EmpiricalDistribution(std::size_t alphabet_size, int depth, std::span<const int> sample)
    : EmpiricalDistribution(alphabet_size, depth) {
    length_ = sample.size();
    for (std::size_t i = 0; i < sample.size(); ++i) {
        std::size_t code = 0;
        for (int len = 1; len <= depth_ && i + static_cast<std::size_t>(len) <= sample.size(); ++len) {
            code = code * k_ + static_cast<std::size_t>(sample[i + static_cast<std::size_t>(len) - 1]);
            ++counts_[static_cast<std::size_t>(len - 1)][code];
        }
    }
}

std::uint64_t EmpiricalDistribution::count(std::span<const int> word) const {
    if (word.empty() || static_cast<int>(word.size()) > depth_) return 0;
    std::size_t code = 0;
    for (int s : word) code = code * k_ + static_cast<std::size_t>(s);
    return counts_[word.size() - 1][code];
}

double EmpiricalDistribution::frequency(std::span<const int> word) const {
    if (length_ < word.size()) return 0.0;
    return static_cast<double>(count(word)) / static_cast<double>(length_ - word.size() + 1);
}

std::vector<double> EmpiricalDistribution::frequency_vector() const {
    std::vector<double> out;
    for (int len = 1; len <= depth_; ++len) {
        double windows = length_ >= static_cast<std::size_t>(len) ? static_cast<double>(length_ - static_cast<std::size_t>(len) + 1) : 1.0;
        for (auto c : counts_[static_cast<std::size_t>(len - 1)]) out.push_back(static_cast<double>(c) / windows);
    }
    return out;
}

}  // namespace fiberlift
