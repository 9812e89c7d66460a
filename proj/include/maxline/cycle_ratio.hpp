#pragma once

#include <cmath>
#include <vector>

#include "maxline/graph.hpp"

namespace maxline {

struct CycleRatioResult {
    double ratio = 0;            // seconds per event
    std::vector<int> cycle;      // node sequence of one cycle attaining it
    double cycle_weight = 0;     // seconds
    int cycle_duration = 0;      // events
};

namespace detail {

struct WalkCycle {
    double weight = 0;   // sum of arc weights
    int duration = 0;    // sum of arc durations
    double reduced = 0;  // sum of (w - mu*d)
    std::vector<int> nodes;
};

// Maximum mean of (w - mu*d) over all cycles, by the k-step longest-walk
// table, plus the simple cycles found on a critical walk. Any walk ending in
// the table's maximizer decomposes into a simple path and cycles whose
// reduced costs sum to something positive whenever the maximum mean is.
inline std::vector<WalkCycle> critical_walk_cycles(const PrecedenceGraph& g, double mu,
                                                   double* max_mean_out) {
    const int n = g.n;
    const double neg = -std::numeric_limits<double>::infinity();
    // d[k][v]: best total reduced cost of a k-arc walk ending at v
    std::vector<std::vector<double>> d(static_cast<size_t>(n) + 1,
                                       std::vector<double>(static_cast<size_t>(n), neg));
    std::vector<std::vector<int>> parent(static_cast<size_t>(n) + 1,
                                         std::vector<int>(static_cast<size_t>(n), -1));
    for (int v = 0; v < n; ++v) d[0][static_cast<size_t>(v)] = 0;
    for (int k = 1; k <= n; ++k)
        for (int a = 0; a < static_cast<int>(g.arcs.size()); ++a) {
            const auto& arc = g.arcs[static_cast<size_t>(a)];
            const double from = d[static_cast<size_t>(k) - 1][static_cast<size_t>(arc.tail)];
            if (from == neg) continue;
            const double cand = from + arc.weight - mu * arc.duration;
            if (cand > d[static_cast<size_t>(k)][static_cast<size_t>(arc.head)]) {
                d[static_cast<size_t>(k)][static_cast<size_t>(arc.head)] = cand;
                parent[static_cast<size_t>(k)][static_cast<size_t>(arc.head)] = a;
            }
        }

    double best = neg;
    int best_v = -1;
    for (int v = 0; v < n; ++v) {
        if (d[static_cast<size_t>(n)][static_cast<size_t>(v)] == neg) continue;
        double worst = std::numeric_limits<double>::infinity();
        for (int k = 0; k < n; ++k) {
            if (d[static_cast<size_t>(k)][static_cast<size_t>(v)] == neg) continue;
            worst = std::min(worst, (d[static_cast<size_t>(n)][static_cast<size_t>(v)] -
                                     d[static_cast<size_t>(k)][static_cast<size_t>(v)]) /
                                        (n - k));
        }
        if (worst > best) {
            best = worst;
            best_v = v;
        }
    }
    if (max_mean_out) *max_mean_out = best;
    std::vector<WalkCycle> cycles;
    if (best_v < 0) return cycles;

    // materialize the critical n-arc walk and cut out its simple cycles
    std::vector<int> walk_nodes{best_v};
    std::vector<int> walk_arcs;
    int v = best_v;
    for (int k = n; k >= 1; --k) {
        const int a = parent[static_cast<size_t>(k)][static_cast<size_t>(v)];
        walk_arcs.push_back(a);
        v = g.arcs[static_cast<size_t>(a)].tail;
        walk_nodes.push_back(v);
    }
    // walk_nodes is end-to-start; scan for repeated nodes, splice cycles out
    std::vector<int> seen_at(static_cast<size_t>(n), -1);
    for (size_t i = 0; i < walk_nodes.size();) {
        const int node = walk_nodes[i];
        const int prev = seen_at[static_cast<size_t>(node)];
        if (prev < 0) {
            seen_at[static_cast<size_t>(node)] = static_cast<int>(i);
            ++i;
            continue;
        }
        WalkCycle c;
        for (size_t p = static_cast<size_t>(prev); p < i; ++p) {
            const auto& arc = g.arcs[static_cast<size_t>(walk_arcs[p])];
            c.weight += arc.weight;
            c.duration += arc.duration;
            c.reduced += arc.weight - mu * arc.duration;
            c.nodes.push_back(walk_nodes[p]);
        }
        cycles.push_back(std::move(c));
        // remove the cycle span and rescan from its start
        walk_nodes.erase(walk_nodes.begin() + prev, walk_nodes.begin() + static_cast<long>(i));
        walk_arcs.erase(walk_arcs.begin() + prev, walk_arcs.begin() + static_cast<long>(i));
        for (auto& s : seen_at) s = -1;
        for (size_t p = 0; p < static_cast<size_t>(prev); ++p)
            seen_at[static_cast<size_t>(walk_nodes[p])] = static_cast<int>(p);
        i = static_cast<size_t>(prev);
    }
    return cycles;
}

} // namespace detail

/// Maximum cycle ratio max_c W(c)/D(c) over the elementary cycles of g.
///
/// Ratio iteration: starting below every cycle ratio, repeatedly evaluate the
/// maximum mean of the reduced costs w - mu*d; while it is positive, some
/// cycle on the critical walk has a ratio above mu, and mu jumps to the best
/// such quotient. Each step lands exactly on a cycle's weight/duration
/// quotient, so the result carries no search tolerance.
inline CycleRatioResult max_cycle_ratio(const PrecedenceGraph& g) {
    if (!detail::graph_has_cycle(g)) throw NoCycle("max_cycle_ratio: graph is acyclic");
    if (detail::has_cycle_if(g, [](const PrecedenceArc& a) { return a.duration == 0; }))
        throw ZeroDurationCycle("max_cycle_ratio: cycle with zero total duration");
    for (const auto& a : g.arcs)
        if (a.duration < 0)
            throw NegativeDelayResidue("max_cycle_ratio: negative arc duration");

    double wmax = 1.0;
    for (const auto& a : g.arcs) wmax = std::max(wmax, std::abs(a.weight));
    const double tol = 1e-12 * wmax * g.n;

    CycleRatioResult best;
    bool have = false;
    double mu = -wmax * g.n - 1.0;
    for (int it = 0; it <= static_cast<int>(g.arcs.size()) * g.n + 8; ++it) {
        double mean = 0;
        auto cycles = detail::critical_walk_cycles(g, mu, &mean);
        double next = mu;
        const detail::WalkCycle* pick = nullptr;
        for (const auto& c : cycles) {
            if (c.duration <= 0 || c.reduced <= tol) continue;
            const double r = c.weight / c.duration;
            if (r > next) {
                next = r;
                pick = &c;
            }
        }
        if (!pick) break; // no cycle above mu: maximum reached
        best.ratio = next;
        best.cycle = pick->nodes;
        best.cycle_weight = pick->weight;
        best.cycle_duration = pick->duration;
        have = true;
        mu = next;
    }
    if (!have) {
        // every cycle mean sits at the start value; pick any cycle directly
        auto cycles = detail::critical_walk_cycles(g, mu, nullptr);
        for (const auto& c : cycles)
            if (c.duration > 0) {
                best.ratio = c.weight / c.duration;
                best.cycle = c.nodes;
                best.cycle_weight = c.weight;
                best.cycle_duration = c.duration;
                have = true;
                break;
            }
        if (!have) throw NoCycle("max_cycle_ratio: no positive-duration cycle found");
    }
    return best;
}

} // namespace maxline
