#include "fiberlift/labeled_graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "fiberlift/error.hpp"

namespace fiberlift {

LabeledGraph::LabeledGraph(std::vector<std::string> x_symbols, const std::vector<std::pair<int, int>>& transitions,
                           std::vector<int> label, std::vector<std::string> y_symbols,
                           std::optional<Recoding> recoding)
    : x_symbols_(std::move(x_symbols)),
      y_symbols_(std::move(y_symbols)),
      label_(std::move(label)),
      recoding_(std::move(recoding)) {
    const int n = static_cast<int>(x_symbols_.size());
    if (label_.size() != x_symbols_.size())
        throw Error(ErrorKind::InvalidInput, "label map must be total on x_symbols");
    for (int y : label_)
        if (y < 0 || y >= static_cast<int>(y_symbols_.size()))
            throw Error(ErrorKind::InvalidInput, "label outside y_symbols");
    if (recoding_ && recoding_->blocks.size() != x_symbols_.size())
        throw Error(ErrorKind::InvalidInput, "recoding blocks do not match x_symbols");
    succ_.assign(x_symbols_.size(), {});
    pred_.assign(x_symbols_.size(), {});
    for (auto [a, b] : transitions) {
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw Error(ErrorKind::InvalidInput, "transition references unknown symbol");
        succ_[static_cast<std::size_t>(a)].push_back(b);
        pred_[static_cast<std::size_t>(b)].push_back(a);
    }
    index();
}

void LabeledGraph::index() {
    for (auto* lists : {&succ_, &pred_}) {
        for (auto& l : *lists) {
            std::sort(l.begin(), l.end());
            l.erase(std::unique(l.begin(), l.end()), l.end());
        }
    }
    classes_.assign(y_symbols_.size(), {});
    class_sets_.assign(y_symbols_.size(), SymbolSet(x_symbols_.size()));
    for (std::size_t x = 0; x < x_symbols_.size(); ++x) {
        classes_[static_cast<std::size_t>(label_[x])].push_back(static_cast<int>(x));
        class_sets_[static_cast<std::size_t>(label_[x])].insert(x);
    }
}

LabeledGraph LabeledGraph::from_names(const std::vector<std::string>& x_symbols,
                                      const std::vector<std::pair<std::string, std::string>>& transitions,
                                      const std::vector<std::string>& labels,
                                      std::optional<std::vector<std::string>> y_symbols) {
    if (labels.size() != x_symbols.size())
        throw Error(ErrorKind::InvalidInput, "label map must be total on x_symbols");
    std::vector<std::string> ys;
    if (y_symbols) {
        ys = *y_symbols;
    } else {
        for (const auto& l : labels)
            if (std::find(ys.begin(), ys.end(), l) == ys.end()) ys.push_back(l);
    }
    auto find_in = [](const std::vector<std::string>& v, const std::string& s) {
        auto it = std::find(v.begin(), v.end(), s);
        return it == v.end() ? -1 : static_cast<int>(it - v.begin());
    };
    for (std::size_t i = 0; i < x_symbols.size(); ++i)
        for (std::size_t j = i + 1; j < x_symbols.size(); ++j)
            if (x_symbols[i] == x_symbols[j]) throw Error(ErrorKind::InvalidInput, "duplicate symbol " + x_symbols[i]);
    std::vector<int> label;
    for (const auto& l : labels) {
        int y = find_in(ys, l);
        if (y < 0) throw Error(ErrorKind::InvalidInput, "label " + l + " not among y_symbols");
        label.push_back(y);
    }
    std::vector<std::pair<int, int>> ts;
    for (const auto& [a, b] : transitions) {
        int ia = find_in(x_symbols, a);
        int ib = find_in(x_symbols, b);
        if (ia < 0 || ib < 0) throw Error(ErrorKind::InvalidInput, "transition " + a + "->" + b + " uses unknown symbol");
        ts.emplace_back(ia, ib);
    }
    return LabeledGraph(x_symbols, ts, std::move(label), std::move(ys));
}

std::size_t LabeledGraph::transition_count() const {
    std::size_t n = 0;
    for (const auto& s : succ_) n += s.size();
    return n;
}

bool LabeledGraph::has_transition(int from, int to) const {
    const auto& s = successors(from);
    return std::binary_search(s.begin(), s.end(), to);
}

std::vector<std::pair<int, int>> LabeledGraph::transitions() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t a = 0; a < succ_.size(); ++a)
        for (int b : succ_[a]) out.emplace_back(static_cast<int>(a), b);
    return out;
}

std::vector<int> LabeledGraph::essential_symbols() const {
    const std::size_t n = size();
    std::vector<int> out_deg(n), in_deg(n);
    std::vector<char> alive(n, 1);
    std::deque<int> queue;
    for (std::size_t x = 0; x < n; ++x) {
        out_deg[x] = static_cast<int>(succ_[x].size());
        in_deg[x] = static_cast<int>(pred_[x].size());
        if (out_deg[x] == 0 || in_deg[x] == 0) {
            alive[x] = 0;
            queue.push_back(static_cast<int>(x));
        }
    }
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (int t : successors(x)) {
            if (alive[static_cast<std::size_t>(t)] && --in_deg[static_cast<std::size_t>(t)] == 0) {
                alive[static_cast<std::size_t>(t)] = 0;
                queue.push_back(t);
            }
        }
        for (int s : predecessors(x)) {
            if (alive[static_cast<std::size_t>(s)] && --out_deg[static_cast<std::size_t>(s)] == 0) {
                alive[static_cast<std::size_t>(s)] = 0;
                queue.push_back(s);
            }
        }
    }
    std::vector<int> keep;
    for (std::size_t x = 0; x < n; ++x)
        if (alive[x]) keep.push_back(static_cast<int>(x));
    return keep;
}

bool LabeledGraph::is_essential() const { return essential_symbols().size() == size(); }

LabeledGraph LabeledGraph::induced(const std::vector<int>& keep) const {
    std::vector<int> remap(size(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) remap[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
    std::vector<std::string> xs;
    std::vector<int> labels;
    std::vector<std::pair<int, int>> ts;
    std::optional<Recoding> rec;
    if (recoding_) {
        rec = Recoding{recoding_->memory, recoding_->anticipation, recoding_->base_alphabet, {}};
    }
    for (int x : keep) {
        xs.push_back(x_name(x));
        labels.push_back(label(x));
        if (rec) rec->blocks.push_back(recoding_->blocks[static_cast<std::size_t>(x)]);
        for (int t : successors(x))
            if (remap[static_cast<std::size_t>(t)] >= 0)
                ts.emplace_back(remap[static_cast<std::size_t>(x)], remap[static_cast<std::size_t>(t)]);
    }
    return LabeledGraph(std::move(xs), ts, std::move(labels), y_symbols_, std::move(rec));
}

LabeledGraph LabeledGraph::trimmed() const {
    auto keep = essential_symbols();
    if (keep.empty()) throw Error(ErrorKind::EmptyAfterTrim, "graph has no bi-infinite path");
    if (keep.size() == size()) return *this;
    return induced(keep);
}

LabeledGraph LabeledGraph::with_transitions(const std::vector<std::pair<int, int>>& transitions) const {
    return LabeledGraph(x_symbols_, transitions, label_, y_symbols_, recoding_);
}

Word LabeledGraph::label_word(std::span<const int> x_word) const {
    Word out;
    out.reserve(x_word.size());
    for (int x : x_word) out.push_back(label(x));
    return out;
}

bool LabeledGraph::is_path(std::span<const int> x_word) const {
    for (std::size_t i = 0; i + 1 < x_word.size(); ++i)
        if (!has_transition(x_word[i], x_word[i + 1])) return false;
    return true;
}

int LabeledGraph::find_x(const std::string& name) const {
    auto it = std::find(x_symbols_.begin(), x_symbols_.end(), name);
    return it == x_symbols_.end() ? -1 : static_cast<int>(it - x_symbols_.begin());
}

int LabeledGraph::find_y(const std::string& name) const {
    auto it = std::find(y_symbols_.begin(), y_symbols_.end(), name);
    return it == y_symbols_.end() ? -1 : static_cast<int>(it - y_symbols_.begin());
}

std::string LabeledGraph::render_x(std::span<const int> x_word) const { return join_symbols(x_symbols_, x_word); }

std::string LabeledGraph::render_y(std::span<const int> y_word) const { return join_symbols(y_symbols_, y_word); }

Word LabeledGraph::base_letters(std::span<const int> x_word) const {
    if (!recoding_) return Word(x_word.begin(), x_word.end());
    Word out;
    out.reserve(x_word.size());
    for (int x : x_word) out.push_back(recoding_->base_symbol(x));
    return out;
}

std::string LabeledGraph::render_base_path(std::span<const int> x_word) const {
    if (!recoding_) return render_x(x_word);
    auto letters = base_letters(x_word);
    return join_symbols(recoding_->base_alphabet, letters);
}

bool is_primitive(std::span<const int> word) {
    const std::size_t n = word.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool periodic = true;
        for (std::size_t i = d; i < n && periodic; ++i) periodic = word[i] == word[i - d];
        if (periodic) return false;
    }
    return n > 0;
}

std::size_t least_rotation_index(std::span<const int> word) {
    const std::size_t n = word.size();
    std::size_t best = 0;
    for (std::size_t r = 1; r < n; ++r) {
        for (std::size_t i = 0; i < n; ++i) {
            int a = word[(r + i) % n];
            int b = word[(best + i) % n];
            if (a != b) {
                if (a < b) best = r;
                break;
            }
        }
    }
    return best;
}

Word rotate(std::span<const int> word, std::size_t shift) {
    Word out(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) out[i] = word[(i + shift) % word.size()];
    return out;
}

PeriodicOrbit canonical_orbit(std::span<const int> word) {
    std::size_t n = word.size();
    std::size_t root = n;
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool periodic = true;
        for (std::size_t i = d; i < n && periodic; ++i) periodic = word[i] == word[i - d];
        if (periodic) {
            root = d;
            break;
        }
    }
    auto prim = word.subspan(0, root);
    return PeriodicOrbit{rotate(prim, least_rotation_index(prim))};
}

std::string join_symbols(const std::vector<std::string>& alphabet, std::span<const int> word) {
    bool single = std::all_of(alphabet.begin(), alphabet.end(), [](const std::string& s) { return s.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (!single && i > 0) out += ' ';
        out += alphabet[static_cast<std::size_t>(word[i])];
    }
    return out;
}

}  // namespace fiberlift
