#include "fiberlift/recode.hpp"

#include <algorithm>
#include <unordered_map>

#include "fiberlift/error.hpp"

namespace fiberlift {

bool SlidingBlockCode::allowed(int a, int b) const {
    if (!transitions) return true;
    return std::find(transitions->begin(), transitions->end(), std::pair{a, b}) != transitions->end();
}

std::vector<Word> SlidingBlockCode::allowed_blocks() const {
    std::vector<Word> out;
    Word w;
    const int k = static_cast<int>(alphabet.size());
    auto extend = [&](auto&& self) -> void {
        if (static_cast<int>(w.size()) == window()) {
            out.push_back(w);
            return;
        }
        for (int a = 0; a < k; ++a) {
            if (!w.empty() && !allowed(w.back(), a)) continue;
            w.push_back(a);
            self(self);
            w.pop_back();
        }
    };
    extend(extend);
    return out;
}

LabeledGraph recode_to_one_block(const SlidingBlockCode& code) {
    if (code.memory < 0 || code.anticipation < 0)
        throw Error(ErrorKind::InvalidInput, "memory and anticipation must be non-negative");
    if (code.alphabet.empty()) throw Error(ErrorKind::InvalidInput, "empty alphabet");
    auto blocks = code.allowed_blocks();
    std::vector<std::string> names;
    std::vector<int> labels;
    for (const auto& b : blocks) {
        auto it = code.block_map.find(b);
        if (it == code.block_map.end())
            throw Error(ErrorKind::InvalidInput, "block map undefined on " + join_symbols(code.alphabet, b));
        if (it->second < 0 || it->second >= static_cast<int>(code.y_symbols.size()))
            throw Error(ErrorKind::InvalidInput, "block image outside y_symbols");
        labels.push_back(it->second);
        std::string name;
        bool single = std::all_of(code.alphabet.begin(), code.alphabet.end(),
                                  [](const std::string& s) { return s.size() == 1; });
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (!single && i > 0) name += '.';
            name += code.alphabet[static_cast<std::size_t>(b[i])];
        }
        names.push_back(std::move(name));
    }
    // Overlap rule: u -> v iff u[1..] == v[..k-1], with the joining step allowed.
    std::unordered_map<std::string, std::vector<int>> by_prefix;
    auto key = [](const Word& w, std::size_t from, std::size_t len) {
        std::string s;
        for (std::size_t i = from; i < from + len; ++i) s += std::to_string(w[i]) + ',';
        return s;
    };
    const auto k = static_cast<std::size_t>(code.window());
    for (std::size_t i = 0; i < blocks.size(); ++i) by_prefix[key(blocks[i], 0, k - 1)].push_back(static_cast<int>(i));
    std::vector<std::pair<int, int>> transitions;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        auto it = by_prefix.find(key(blocks[i], 1, k - 1));
        if (it == by_prefix.end()) continue;
        for (int j : it->second) {
            const auto& v = blocks[static_cast<std::size_t>(j)];
            if (k == 1 && !code.allowed(blocks[i][0], v[0])) continue;
            transitions.emplace_back(static_cast<int>(i), j);
        }
    }
    Recoding rec{code.memory, code.anticipation, code.alphabet, blocks};
    return LabeledGraph(std::move(names), transitions, std::move(labels), code.y_symbols, std::move(rec));
}

}  // namespace fiberlift
