#include "fiberlift/symbol_set.hpp"

#include <bit>

namespace fiberlift {

SymbolSet SymbolSet::full(std::size_t universe) {
    SymbolSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.insert(i);
    return s;
}

std::size_t SymbolSet::count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool SymbolSet::empty() const {
    for (auto w : words_)
        if (w != 0) return false;
    return true;
}

bool SymbolSet::intersects(const SymbolSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if ((words_[i] & other.words_[i]) != 0) return true;
    return false;
}

SymbolSet& SymbolSet::operator&=(const SymbolSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
}

SymbolSet& SymbolSet::operator|=(const SymbolSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
}

std::vector<int> SymbolSet::members() const {
    std::vector<int> out;
    for_each([&](int i) { out.push_back(i); });
    return out;
}

std::size_t SymbolSet::hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ universe_;
    for (auto w : words_) {
        h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
}

}  // namespace fiberlift
