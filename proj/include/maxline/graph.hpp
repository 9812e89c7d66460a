#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "maxline/poly.hpp"

namespace maxline {

/// Weighted precedence graph of a polynomial matrix: one arc per non-eps
/// coefficient entry. Arc (tail -> head) carries the entry's value as its
/// weight and the coefficient delay as its duration.
struct PrecedenceArc {
    int tail = 0;       // source node (column index)
    int head = 0;       // target node (row index)
    double weight = 0;  // seconds
    int duration = 0;   // events
};

struct PrecedenceGraph {
    int n = 0;
    std::vector<PrecedenceArc> arcs;
    std::vector<std::string> node_names; // optional display names, size n when present

    std::string name_of(int i) const {
        if (i < static_cast<int>(node_names.size()) && !node_names[i].empty()) return node_names[i];
        return std::to_string(i);
    }
};

inline PrecedenceGraph to_graph(const PolyMatrix& A) {
    PrecedenceGraph g;
    g.n = A.dim();
    for (int l = A.lo(); l <= A.hi(); ++l) {
        const MaxPlusMatrix& C = A.coeff(l);
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j) {
                if (C(i, j).is_eps()) continue;
                g.arcs.push_back({j, i, C(i, j).v, l});
            }
    }
    return g;
}

namespace detail {

inline std::vector<std::vector<int>> out_adjacency(const PrecedenceGraph& g) {
    std::vector<std::vector<int>> adj(g.n);
    for (int a = 0; a < static_cast<int>(g.arcs.size()); ++a)
        adj[g.arcs[a].tail].push_back(a);
    return adj;
}

// Cycle check over a subset of arcs (pred selects arcs to keep).
template <class Pred>
bool has_cycle_if(const PrecedenceGraph& g, Pred keep) {
    std::vector<std::vector<int>> succ(g.n);
    for (const auto& a : g.arcs)
        if (keep(a)) succ[a.tail].push_back(a.head);
    std::vector<int> state(g.n, 0), iter(g.n, 0), stack;
    for (int s = 0; s < g.n; ++s) {
        if (state[s]) continue;
        stack.push_back(s);
        state[s] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            bool advanced = false;
            while (iter[u] < static_cast<int>(succ[u].size())) {
                int v = succ[u][iter[u]++];
                if (state[v] == 1) return true;
                if (state[v] == 0) {
                    state[v] = 1;
                    stack.push_back(v);
                    advanced = true;
                    break;
                }
            }
            if (!advanced) {
                state[u] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}

inline bool graph_has_cycle(const PrecedenceGraph& g) {
    return has_cycle_if(g, [](const PrecedenceArc&) { return true; });
}

// Strong connectivity restricted to nodes incident to at least one arc.
inline bool strongly_connected_on_used(const PrecedenceGraph& g) {
    std::vector<char> used(g.n, 0);
    for (const auto& a : g.arcs) used[a.tail] = used[a.head] = 1;
    int start = -1, count = 0;
    for (int i = 0; i < g.n; ++i)
        if (used[i]) {
            if (start < 0) start = i;
            ++count;
        }
    if (start < 0) return false;
    auto reach = [&](bool fwd) {
        std::vector<std::vector<int>> succ(g.n);
        for (const auto& a : g.arcs)
            fwd ? succ[a.tail].push_back(a.head) : succ[a.head].push_back(a.tail);
        std::vector<char> seen(g.n, 0);
        std::vector<int> stack{start};
        seen[start] = 1;
        int found = 0;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            ++found;
            for (int v : succ[u])
                if (!seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
        }
        return found;
    };
    return reach(true) == count && reach(false) == count;
}

} // namespace detail

/// DOT text for a precedence graph; deterministic node and arc order.
inline std::string to_dot(const PrecedenceGraph& g, const std::string& title = "G") {
    std::string out = "digraph \"" + title + "\" {\n";
    for (int i = 0; i < g.n; ++i)
        out += "  \"" + g.name_of(i) + "\";\n";
    std::vector<PrecedenceArc> arcs = g.arcs;
    std::stable_sort(arcs.begin(), arcs.end(), [](const PrecedenceArc& a, const PrecedenceArc& b) {
        if (a.tail != b.tail) return a.tail < b.tail;
        if (a.head != b.head) return a.head < b.head;
        return a.duration < b.duration;
    });
    char buf[64];
    for (const auto& a : arcs) {
        std::snprintf(buf, sizeof buf, "W=%.10g,D=%d", a.weight, a.duration);
        out += "  \"" + g.name_of(a.tail) + "\" -> \"" + g.name_of(a.head) + "\" [label=\"" + buf + "\"];\n";
    }
    out += "}\n";
    return out;
}

} // namespace maxline
