#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fiberlift/labeled_graph.hpp"

namespace fiberlift {

/// A sliding block code with the given memory and anticipation on a 1-step SFT
/// over `alphabet` (the full shift when `transitions` is empty).
struct SlidingBlockCode {
    int memory = 0;
    int anticipation = 0;
    std::vector<std::string> alphabet;
    std::optional<std::vector<std::pair<int, int>>> transitions;
    /// Image symbol of every allowed (memory + anticipation + 1)-word.
    std::map<Word, int> block_map;
    std::vector<std::string> y_symbols;

    int window() const { return memory + anticipation + 1; }
    bool allowed(int a, int b) const;
    /// Allowed words of length `window()` in lexicographic order of the alphabet.
    std::vector<Word> allowed_blocks() const;
};

/// Higher-block presentation: symbols are the allowed window-words, transitions
/// are overlap-compatible pairs, and each block is labeled by the block map. The
/// recoding metadata keeps the offset `memory` for translating back to base points.
LabeledGraph recode_to_one_block(const SlidingBlockCode& code);

}  // namespace fiberlift
