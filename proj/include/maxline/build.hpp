#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "maxline/line.hpp"
#include "maxline/poly.hpp"

namespace maxline {

/// One lower-bound constraint contribution: segment it comes from and
/// whether it is a travel ('t') or separation ('s') bound.
struct Prim {
    char kind = 't';
    int u = 0;
    int j = 0;
    friend bool operator<(const Prim& a, const Prim& b) {
        return std::tie(a.kind, a.u, a.j) < std::tie(b.kind, b.u, b.j);
    }
    friend bool operator==(const Prim& a, const Prim& b) {
        return a.kind == b.kind && a.u == b.u && a.j == b.j;
    }
};

namespace detail {

struct Entry {
    int i = 0; // target variable
    int j = 0; // source variable
    int l = 0; // delay, signed while inside the parity matrices
    double w = 0;
    std::vector<Prim> prims;
};

// Constraint entries of the two alternating one-step matrices, in the
// rewritten single-counter variables. Odd junction events couple the central
// part with branch 1, even ones with branch 2; everything else holds at every
// step and lands in both matrices. Delays on the odd-side coupling rows can
// be -1 here; composition plus counter re-basing removes them.
inline void parity_entries(const LineDescription& line,
                           std::vector<Entry>& a1, std::vector<Entry>& a2) {
    auto both = [&](Entry e) { a1.push_back(e); a2.push_back(e); };
    const int n0 = line.n0, n1 = line.n1, n2 = line.n2;

    // central travel, j = 1..n0 (includes the divergence node)
    for (int j = 1; j <= n0; ++j)
        both({line.var(0, j), line.var(0, j - 1), line.b(0, j),
              line.params(0, j).t_lower, {{'t', 0, j}}});
    // central separation, j = 0..n0-1 (includes the merge node)
    for (int j = 0; j <= n0 - 1; ++j)
        both({line.var(0, j), line.var(0, j + 1), line.b_bar(0, j + 1),
              line.params(0, j + 1).s_lower, {{'s', 0, j + 1}}});

    for (int u = 1; u <= 2; ++u) {
        const int n_u = line.part_size(u);
        for (int j = 2; j <= n_u - 1; ++j)
            both({line.var(u, j), line.var(u, j - 1), 2 * line.b(u, j),
                  line.params(u, j).t_lower, {{'t', u, j}}});
        for (int j = 1; j <= n_u - 2; ++j)
            both({line.var(u, j), line.var(u, j + 1), 2 * line.b_bar(u, j + 1),
                  line.params(u, j + 1).s_lower, {{'s', u, j + 1}}});
    }

    // branch 1 junction coupling (odd steps only)
    a1.push_back({line.var(0, n0), line.var(1, 1), 2 * line.b_bar(1, 1) - 1,
                  line.params(1, 1).s_lower, {{'s', 1, 1}}});
    a1.push_back({line.var(1, 1), line.var(0, n0), 1 + 2 * line.b(1, 1),
                  line.params(1, 1).t_lower, {{'t', 1, 1}}});
    a1.push_back({line.var(0, 0), line.var(1, n1 - 1), 2 * line.b(1, n1) - 1,
                  line.params(1, n1).t_lower, {{'t', 1, n1}}});
    a1.push_back({line.var(1, n1 - 1), line.var(0, 0), 1 + 2 * line.b_bar(1, n1),
                  line.params(1, n1).s_lower, {{'s', 1, n1}}});

    // branch 2 junction coupling (even steps only)
    a2.push_back({line.var(0, n0), line.var(2, 1), 2 * line.b_bar(2, 1),
                  line.params(2, 1).s_lower, {{'s', 2, 1}}});
    a2.push_back({line.var(2, 1), line.var(0, n0), 2 * line.b(2, 1),
                  line.params(2, 1).t_lower, {{'t', 2, 1}}});
    a2.push_back({line.var(0, 0), line.var(2, n2 - 1), 2 * line.b(2, n2),
                  line.params(2, n2).t_lower, {{'t', 2, n2}}});
    a2.push_back({line.var(2, n2 - 1), line.var(0, 0), 2 * line.b_bar(2, n2),
                  line.params(2, n2).s_lower, {{'s', 2, n2}}});
}

inline PolyMatrix assemble(const std::vector<Entry>& entries, int n) {
    PolyMatrix P(n, 0, 0);
    for (const auto& e : entries) P.accumulate(e.i, e.j, e.l, MaxPlusScalar(e.w));
    P.trim();
    return P;
}

} // namespace detail

/// The two alternating one-step matrices A1 (odd events) and A2 (even
/// events). A1 couples the central part with branch 1 and leaves branch 2
/// block-diagonal; A2 mirrors this for branch 2.
inline std::pair<PolyMatrix, PolyMatrix> build_parity_matrices(const LineDescription& line) {
    validate(line);
    std::vector<detail::Entry> a1, a2;
    detail::parity_entries(line, a1, a2);
    const int n = line.num_vars();
    return {detail::assemble(a1, n), detail::assemble(a2, n)};
}

/// Two-step matrix with provenance tags for its entries (which segment
/// bounds each arc is composed of); the tags drive cycle classification.
struct ComposedSystem {
    PolyMatrix B;
    // (target, source, delay) -> constraint composition of the entry max
    std::map<std::tuple<int, int, int>, std::vector<Prim>> tags;
};

/// Compose the even step with the odd step into the two-step matrix B.
///
/// The raw product leaves the odd-side coupling entries one event ahead of
/// the branch-1 counter (delay -1); re-basing the branch-1 counters by one
/// event makes every delay a plain occupancy sum, nonnegative for any 0/1
/// placement. On top of the product, the four junction segments contribute
/// same-parity two-arc cycles (their travel and separation bounds chain
/// across two consecutive same-branch junction events); those arcs are added
/// explicitly, since a strict odd/even alternation of entries cannot express
/// them.
inline ComposedSystem build_composed_system(const LineDescription& line) {
    validate(line);
    std::vector<detail::Entry> a1, a2;
    detail::parity_entries(line, a1, a2);
    const int n = line.num_vars();
    const int n0 = line.n0;

    // counter re-basing: branch-1 variables shift by one event
    std::vector<int> shift(n, 0);
    for (int j = 1; j <= line.n1 - 1; ++j) shift[line.var(1, j)] = -1;

    std::vector<detail::Entry> composed;
    std::vector<std::vector<const detail::Entry*>> a1_by_target(n);
    for (const auto& e : a1) a1_by_target[e.i].push_back(&e);
    for (const auto& e2 : a2)
        for (const detail::Entry* e1 : a1_by_target[e2.j]) {
            detail::Entry c;
            c.i = e2.i;
            c.j = e1->j;
            c.l = e2.l + e1->l + shift[c.i] - shift[c.j];
            c.w = e2.w + e1->w;
            c.prims = e2.prims;
            c.prims.insert(c.prims.end(), e1->prims.begin(), e1->prims.end());
            composed.push_back(c);
        }

    // junction closure: segment (u,1) ties the divergence node to the branch
    // entry across two same-parity events, segment (u,n_u) does the same at
    // the merge; delays are written in the re-based counters
    auto closure = [&](int u) {
        const int n_u = line.part_size(u);
        composed.push_back({line.var(0, n0), line.var(u, 1), 2 * line.b_bar(u, 1),
                            line.params(u, 1).s_lower, {{'s', u, 1}}});
        composed.push_back({line.var(u, 1), line.var(0, n0), 2 * line.b(u, 1),
                            line.params(u, 1).t_lower, {{'t', u, 1}}});
        composed.push_back({line.var(0, 0), line.var(u, n_u - 1), 2 * line.b(u, n_u),
                            line.params(u, n_u).t_lower, {{'t', u, n_u}}});
        composed.push_back({line.var(u, n_u - 1), line.var(0, 0), 2 * line.b_bar(u, n_u),
                            line.params(u, n_u).s_lower, {{'s', u, n_u}}});
    };
    closure(1);
    closure(2);

    ComposedSystem sys;
    sys.B = PolyMatrix(n, 0, 0);
    for (const auto& e : composed) {
        if (e.l < 0)
            throw NegativeDelayResidue("build_composed: delay " + std::to_string(e.l) +
                                       " at entry " + line.node_name(e.i) + " <- " +
                                       line.node_name(e.j));
        auto key = std::make_tuple(e.i, e.j, e.l);
        MaxPlusScalar prev = sys.B.at(e.i, e.j, e.l);
        if (!prev.finite() || e.w > prev.v) sys.tags[key] = e.prims;
        sys.B.accumulate(e.i, e.j, e.l, MaxPlusScalar(e.w));
    }
    sys.B.trim();
    return sys;
}

inline PolyMatrix build_composed(const LineDescription& line) {
    return build_composed_system(line).B;
}

/// One full odd+even alternation written as a single max-plus system.
/// Central variables appear twice (their odd- and their even-indexed
/// events); branch variables once. The backshift of this system counts
/// two-event windows, so its growth rate is twice the central headway. It is
/// a direct transliteration of the departure recursion and is what the
/// matrix-form simulator iterates.
struct WindowSystem {
    PolyMatrix M;
    int n0 = 0, n1 = 0, n2 = 0;
    int dim = 0;

    int central_odd(int j) const { return j; }
    int central_even(int j) const { return (n0 + 1) + j; }
    int branch1(int j) const { return 2 * (n0 + 1) + (j - 1); }
    int branch2(int j) const { return 2 * (n0 + 1) + (n1 - 1) + (j - 1); }

    std::vector<std::string> node_names() const {
        std::vector<std::string> names(static_cast<size_t>(dim));
        for (int j = 0; j <= n0; ++j) {
            names[static_cast<size_t>(central_odd(j))] = "(0," + std::to_string(j) + ")odd";
            names[static_cast<size_t>(central_even(j))] = "(0," + std::to_string(j) + ")even";
        }
        for (int j = 1; j <= n1 - 1; ++j)
            names[static_cast<size_t>(branch1(j))] = "(1," + std::to_string(j) + ")";
        for (int j = 1; j <= n2 - 1; ++j)
            names[static_cast<size_t>(branch2(j))] = "(2," + std::to_string(j) + ")";
        return names;
    }
};

inline WindowSystem build_window_system(const LineDescription& line) {
    validate(line);
    WindowSystem ws;
    ws.n0 = line.n0;
    ws.n1 = line.n1;
    ws.n2 = line.n2;
    ws.dim = 2 * (line.n0 + 1) + (line.n1 - 1) + (line.n2 - 1);
    ws.M = PolyMatrix(ws.dim, 0, 1);
    auto add = [&](int i, int j, int g, double w) { ws.M.accumulate(i, j, g, MaxPlusScalar(w)); };
    const int n0 = line.n0;

    for (int j = 1; j <= n0; ++j) {
        const double t = line.params(0, j).t_lower;
        const int b = line.b(0, j);
        // odd event: an occupied segment points one window back at the even event
        add(ws.central_odd(j), b ? ws.central_even(j - 1) : ws.central_odd(j - 1), b, t);
        // even event: delays 0 and 1 both resolve inside the window
        add(ws.central_even(j), b ? ws.central_odd(j - 1) : ws.central_even(j - 1), 0, t);
    }
    for (int j = 0; j <= n0 - 1; ++j) {
        const double s = line.params(0, j + 1).s_lower;
        const int bb = line.b_bar(0, j + 1);
        add(ws.central_odd(j), bb ? ws.central_even(j + 1) : ws.central_odd(j + 1), bb, s);
        add(ws.central_even(j), bb ? ws.central_odd(j + 1) : ws.central_even(j + 1), 0, s);
    }

    auto branch = [&](int u) {
        const int n_u = line.part_size(u);
        auto node = [&](int j) { return u == 1 ? ws.branch1(j) : ws.branch2(j); };
        const int div = u == 1 ? ws.central_odd(n0) : ws.central_even(n0);
        const int mrg = u == 1 ? ws.central_odd(0) : ws.central_even(0);
        // divergence separation and merge travel, at this branch's parity
        add(div, node(1), line.b_bar(u, 1), line.params(u, 1).s_lower);
        add(mrg, node(n_u - 1), line.b(u, n_u), line.params(u, n_u).t_lower);
        // branch entry travel and merge-side separation
        add(node(1), div, line.b(u, 1), line.params(u, 1).t_lower);
        add(node(n_u - 1), mrg, line.b_bar(u, n_u), line.params(u, n_u).s_lower);
        for (int j = 2; j <= n_u - 1; ++j)
            add(node(j), node(j - 1), line.b(u, j), line.params(u, j).t_lower);
        for (int j = 1; j <= n_u - 2; ++j)
            add(node(j), node(j + 1), line.b_bar(u, j + 1), line.params(u, j + 1).s_lower);
    };
    branch(1);
    branch(2);
    ws.M.trim();
    return ws;
}

} // namespace maxline
