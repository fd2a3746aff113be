#include "fiberlift/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fiberlift/error.hpp"

namespace fiberlift {

namespace {

constexpr double kPowerTolerance = 1e-12;
constexpr long kPowerMaxIterations = 1'000'000;

int component_period(const std::vector<std::vector<int>>& succ, const std::vector<int>& members) {
    std::vector<int> level(succ.size(), -1);
    std::vector<char> inside(succ.size(), 0);
    for (int v : members) inside[static_cast<std::size_t>(v)] = 1;
    std::vector<int> queue{members.front()};
    level[static_cast<std::size_t>(members.front())] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        for (int t : succ[static_cast<std::size_t>(v)]) {
            if (!inside[static_cast<std::size_t>(t)] || level[static_cast<std::size_t>(t)] >= 0) continue;
            level[static_cast<std::size_t>(t)] = level[static_cast<std::size_t>(v)] + 1;
            queue.push_back(t);
        }
    }
    int g = 0;
    for (int v : members)
        for (int t : succ[static_cast<std::size_t>(v)])
            if (inside[static_cast<std::size_t>(t)])
                g = std::gcd(g, std::abs(level[static_cast<std::size_t>(v)] + 1 - level[static_cast<std::size_t>(t)]));
    return g;
}

bool has_internal_edge(const std::vector<std::vector<int>>& succ, const std::vector<int>& members) {
    if (members.size() > 1) return true;
    int v = members.front();
    const auto& s = succ[static_cast<std::size_t>(v)];
    return std::find(s.begin(), s.end(), v) != s.end();
}

/// Collatz–Wielandt bracketing on (A + I), which is primitive whenever A is irreducible.
double perron_root_irreducible(const std::vector<std::vector<int>>& succ, const std::vector<int>& members) {
    const std::size_t n = members.size();
    std::vector<int> local(succ.size(), -1);
    for (std::size_t i = 0; i < n; ++i) local[static_cast<std::size_t>(members[i])] = static_cast<int>(i);
    std::vector<std::vector<int>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (int t : succ[static_cast<std::size_t>(members[i])])
            if (local[static_cast<std::size_t>(t)] >= 0) adj[i].push_back(local[static_cast<std::size_t>(t)]);

    std::vector<double> v(n, 1.0), w(n);
    double lo = 0.0, hi = std::numeric_limits<double>::infinity();
    for (long it = 0; it < kPowerMaxIterations; ++it) {
        // w = (A + I) v, computed as row sums over successors.
        for (std::size_t i = 0; i < n; ++i) {
            double s = v[i];
            for (int t : adj[i]) s += v[static_cast<std::size_t>(t)];
            w[i] = s;
        }
        lo = std::numeric_limits<double>::infinity();
        hi = 0.0;
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double r = w[i] / v[i];
            lo = std::min(lo, r);
            hi = std::max(hi, r);
            norm = std::max(norm, w[i]);
        }
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
        if (hi - lo <= kPowerTolerance * hi) break;
    }
    return 0.5 * (lo + hi) - 1.0;
}

}  // namespace

std::vector<std::vector<int>> strongly_connected_components(const std::vector<std::vector<int>>& succ) {
    const int n = static_cast<int>(succ.size());
    std::vector<int> index(succ.size(), -1), low(succ.size(), 0);
    std::vector<char> on_stack(succ.size(), 0);
    std::vector<int> stack;
    std::vector<std::vector<int>> out;
    int counter = 0;
    // Iterative Tarjan: frames hold (vertex, next successor position).
    std::vector<std::pair<int, std::size_t>> frames;
    for (int root = 0; root < n; ++root) {
        if (index[static_cast<std::size_t>(root)] >= 0) continue;
        frames.emplace_back(root, 0);
        index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = counter++;
        stack.push_back(root);
        on_stack[static_cast<std::size_t>(root)] = 1;
        while (!frames.empty()) {
            auto& [v, pos] = frames.back();
            const auto& s = succ[static_cast<std::size_t>(v)];
            if (pos < s.size()) {
                int t = s[pos++];
                auto ti = static_cast<std::size_t>(t);
                if (index[ti] < 0) {
                    index[ti] = low[ti] = counter++;
                    stack.push_back(t);
                    on_stack[ti] = 1;
                    frames.emplace_back(t, 0);
                } else if (on_stack[ti]) {
                    low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], index[ti]);
                }
                continue;
            }
            int done = v;
            frames.pop_back();
            auto di = static_cast<std::size_t>(done);
            if (!frames.empty()) {
                auto pi = static_cast<std::size_t>(frames.back().first);
                low[pi] = std::min(low[pi], low[di]);
            }
            if (low[di] == index[di]) {
                std::vector<int> comp;
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[static_cast<std::size_t>(w)] = 0;
                    comp.push_back(w);
                } while (w != done);
                std::sort(comp.begin(), comp.end());
                out.push_back(std::move(comp));
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

StructureReport analyze_graph(const LabeledGraph& g) {
    if (g.size() == 0) throw Error(ErrorKind::InvalidInput, "graph has no symbols");
    StructureReport report;
    report.trimmed_symbols = g.essential_symbols();
    if (report.trimmed_symbols.empty()) throw Error(ErrorKind::EmptyAfterTrim, "graph has no bi-infinite path");
    report.is_essential = report.trimmed_symbols.size() == g.size();
    for (int x = 0, k = 0; x < static_cast<int>(g.size()); ++x) {
        if (k < static_cast<int>(report.trimmed_symbols.size()) && report.trimmed_symbols[static_cast<std::size_t>(k)] == x)
            ++k;
        else
            report.removed_symbols.push_back(x);
    }
    LabeledGraph core = g.induced(report.trimmed_symbols);
    std::vector<std::vector<int>> succ(core.size());
    for (std::size_t x = 0; x < core.size(); ++x) succ[x] = core.successors(static_cast<int>(x));
    for (auto& comp : strongly_connected_components(succ)) {
        if (!has_internal_edge(succ, comp)) continue;
        Component c;
        c.period = component_period(succ, comp);
        for (int v : comp) c.symbols.push_back(report.trimmed_symbols[static_cast<std::size_t>(v)]);
        report.components.push_back(std::move(c));
    }
    report.is_irreducible = report.is_essential && report.components.size() == 1 &&
                            report.components.front().symbols.size() == g.size();
    return report;
}

bool is_irreducible(const LabeledGraph& g) {
    if (g.size() == 0) return false;
    std::vector<std::vector<int>> succ(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) succ[x] = g.successors(static_cast<int>(x));
    auto comps = strongly_connected_components(succ);
    return comps.size() == 1 && has_internal_edge(succ, comps.front());
}

double spectral_radius(const std::vector<std::vector<int>>& succ) {
    double rho = 0.0;
    for (const auto& comp : strongly_connected_components(succ)) {
        if (!has_internal_edge(succ, comp)) continue;
        rho = std::max(rho, perron_root_irreducible(succ, comp));
    }
    return rho;
}

double entropy(const LabeledGraph& g) {
    if (!is_irreducible(g)) throw Error(ErrorKind::NotIrreducible, "entropy requires an irreducible graph");
    std::vector<std::vector<int>> succ(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) succ[x] = g.successors(static_cast<int>(x));
    return std::log(spectral_radius(succ));
}

std::vector<PeriodicOrbit> enumerate_periodic_orbits(const LabeledGraph& g, int max_period) {
    if (max_period < 1) throw Error(ErrorKind::InvalidInput, "max_period must be at least 1");
    std::vector<PeriodicOrbit> out;
    Word path;
    // A least rotation starts with its minimal symbol, so walks from `start` stay at or above it.
    auto extend = [&](auto&& self, int start, int period) -> void {
        int last = path.back();
        if (static_cast<int>(path.size()) == period) {
            if (g.has_transition(last, start) && is_primitive(path) && least_rotation_index(path) == 0)
                out.push_back(PeriodicOrbit{path});
            return;
        }
        for (int t : g.successors(last)) {
            if (t < start) continue;
            path.push_back(t);
            self(self, start, period);
            path.pop_back();
        }
    };
    for (int period = 1; period <= max_period; ++period) {
        for (int start = 0; start < static_cast<int>(g.size()); ++start) {
            path.assign(1, start);
            extend(extend, start, period);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace fiberlift
