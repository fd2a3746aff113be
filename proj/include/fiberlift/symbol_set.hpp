#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace fiberlift {

/// Fixed-universe bitset over symbol indices; the value type of subset constructions.
class SymbolSet {
public:
    SymbolSet() = default;
    explicit SymbolSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

    static SymbolSet full(std::size_t universe);

    std::size_t universe() const { return universe_; }

    void insert(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void erase(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool contains(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }

    std::size_t count() const;
    bool empty() const;
    bool intersects(const SymbolSet& other) const;

    SymbolSet& operator&=(const SymbolSet& other);
    SymbolSet& operator|=(const SymbolSet& other);
    friend SymbolSet operator&(SymbolSet a, const SymbolSet& b) { return a &= b; }
    friend SymbolSet operator|(SymbolSet a, const SymbolSet& b) { return a |= b; }

    /// Members in increasing order.
    std::vector<int> members() const;

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits != 0) {
                int bit = __builtin_ctzll(bits);
                f(static_cast<int>(w * 64 + bit));
                bits &= bits - 1;
            }
        }
    }

    std::size_t hash() const;

    friend bool operator==(const SymbolSet& a, const SymbolSet& b) = default;
    friend auto operator<=>(const SymbolSet& a, const SymbolSet& b) = default;

private:
    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

struct SymbolSetHash {
    std::size_t operator()(const SymbolSet& s) const { return s.hash(); }
};

}  // namespace fiberlift
