#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fiberlift/symbol_set.hpp"

namespace fiberlift {

/// A word is a sequence of symbol indices into some ordered alphabet.
using Word = std::vector<int>;

/// Provenance of a higher-block presentation: each X-symbol is an allowed
/// (memory + anticipation + 1)-word of a base shift, and the coordinate of
/// the base point it stands for sits at offset `memory` inside the block.
struct Recoding {
    int memory = 0;
    int anticipation = 0;
    std::vector<std::string> base_alphabet;
    std::vector<Word> blocks;

    int block_length() const { return memory + anticipation + 1; }
    int base_symbol(int x) const { return blocks[static_cast<std::size_t>(x)][static_cast<std::size_t>(memory)]; }
};

/// A 1-step SFT on `x_symbols` with a 1-block code onto the sofic shift it labels.
///
/// Symbols are opaque and ordered by position; every lexicographic choice in
/// the library uses this order. Transition lists are kept sorted.
class LabeledGraph {
public:
    LabeledGraph() = default;
    LabeledGraph(std::vector<std::string> x_symbols, const std::vector<std::pair<int, int>>& transitions,
                 std::vector<int> label, std::vector<std::string> y_symbols,
                 std::optional<Recoding> recoding = std::nullopt);

    /// Name-based constructor; y-symbols are ordered by first appearance along x_symbols.
    static LabeledGraph from_names(const std::vector<std::string>& x_symbols,
                                   const std::vector<std::pair<std::string, std::string>>& transitions,
                                   const std::vector<std::string>& labels,
                                   std::optional<std::vector<std::string>> y_symbols = std::nullopt);

    std::size_t size() const { return x_symbols_.size(); }
    std::size_t y_size() const { return y_symbols_.size(); }
    std::size_t transition_count() const;

    const std::vector<std::string>& x_symbols() const { return x_symbols_; }
    const std::vector<std::string>& y_symbols() const { return y_symbols_; }
    const std::string& x_name(int x) const { return x_symbols_[static_cast<std::size_t>(x)]; }
    const std::string& y_name(int y) const { return y_symbols_[static_cast<std::size_t>(y)]; }

    const std::vector<int>& successors(int x) const { return succ_[static_cast<std::size_t>(x)]; }
    const std::vector<int>& predecessors(int x) const { return pred_[static_cast<std::size_t>(x)]; }
    bool has_transition(int from, int to) const;
    std::vector<std::pair<int, int>> transitions() const;

    int label(int x) const { return label_[static_cast<std::size_t>(x)]; }
    const std::vector<int>& labels() const { return label_; }
    /// X-symbols carrying label y, in symbol order.
    const std::vector<int>& label_class(int y) const { return classes_[static_cast<std::size_t>(y)]; }
    const SymbolSet& label_class_set(int y) const { return class_sets_[static_cast<std::size_t>(y)]; }

    const std::optional<Recoding>& recoding() const { return recoding_; }

    /// Symbols lying on some bi-infinite path.
    std::vector<int> essential_symbols() const;
    bool is_essential() const;
    /// Subgraph on `keep` (in the given order); labels and recoding follow along.
    LabeledGraph induced(const std::vector<int>& keep) const;
    /// Essential part; throws EmptyAfterTrim when no bi-infinite path exists.
    LabeledGraph trimmed() const;
    /// Subgraph keeping all symbols but only the listed transitions.
    LabeledGraph with_transitions(const std::vector<std::pair<int, int>>& transitions) const;

    Word label_word(std::span<const int> x_word) const;
    bool is_path(std::span<const int> x_word) const;

    int find_x(const std::string& name) const;
    int find_y(const std::string& name) const;

    std::string render_x(std::span<const int> x_word) const;
    std::string render_y(std::span<const int> y_word) const;
    /// Base-alphabet rendering of a path, when the graph is a recoding; X rendering otherwise.
    std::string render_base_path(std::span<const int> x_word) const;
    /// Base-alphabet letters at the recoding offset, one per path position.
    Word base_letters(std::span<const int> x_word) const;

private:
    void index();

    std::vector<std::string> x_symbols_;
    std::vector<std::string> y_symbols_;
    std::vector<int> label_;
    std::vector<std::vector<int>> succ_;
    std::vector<std::vector<int>> pred_;
    std::vector<std::vector<int>> classes_;
    std::vector<SymbolSet> class_sets_;
    std::optional<Recoding> recoding_;
};

/// A periodic point up to shift, stored as its lexicographically least primitive word.
struct PeriodicOrbit {
    Word word;

    std::size_t period() const { return word.size(); }
    friend bool operator==(const PeriodicOrbit&, const PeriodicOrbit&) = default;
    friend auto operator<=>(const PeriodicOrbit& a, const PeriodicOrbit& b) {
        if (a.word.size() != b.word.size()) return a.word.size() <=> b.word.size();
        return a.word <=> b.word;
    }
};

bool is_primitive(std::span<const int> word);
/// Index of the lexicographically least rotation.
std::size_t least_rotation_index(std::span<const int> word);
Word rotate(std::span<const int> word, std::size_t shift);
/// Canonical orbit of the periodic point w^∞: primitive root, least rotation.
PeriodicOrbit canonical_orbit(std::span<const int> word);

std::string join_symbols(const std::vector<std::string>& alphabet, std::span<const int> word);

}  // namespace fiberlift
