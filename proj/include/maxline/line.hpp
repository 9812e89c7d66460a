#pragma once

#include <array>
#include <string>
#include <vector>

#include "maxline/errors.hpp"

namespace maxline {

/// Lower bounds for one track segment. t_lower is the minimum travel
/// (run + dwell) time through the segment; s_lower the minimum separation
/// surplus that must elapse between a departure ahead and the close-in
/// behind it.
struct SegmentParams {
    double t_lower = 0; // seconds, > 0
    double s_lower = 0; // seconds, >= 0
};

/// A metro line with one symmetrically operated junction: central part
/// (u = 0) plus two branches (u = 1, 2). Part u has n_u segments, indexed
/// j = 1..n_u; b[u][j-1] says whether segment (u,j) holds a train at time 0.
///
/// Departure variables: central nodes (0,0)..(0,n0), branch nodes
/// (u,1)..(u,n_u - 1). Segment (u,n_u) of a branch feeds the merge node
/// (0,0); segment (u,1) leaves the divergence node (0,n0). Odd departures
/// at the junction belong to branch 1, even ones to branch 2.
struct LineDescription {
    int n0 = 0, n1 = 0, n2 = 0;
    std::array<std::vector<SegmentParams>, 3> seg; // seg[u][j-1], j = 1..n_u
    std::array<std::vector<int>, 3> occ;           // b in {0,1}, same indexing

    int part_size(int u) const { return u == 0 ? n0 : (u == 1 ? n1 : n2); }

    const SegmentParams& params(int u, int j) const { return seg[u][static_cast<size_t>(j) - 1]; }
    int b(int u, int j) const { return occ[u][static_cast<size_t>(j) - 1]; }
    int b_bar(int u, int j) const { return 1 - b(u, j); }

    /// Number of departure variables: n0 + n1 + n2 - 1.
    int num_vars() const { return n0 + n1 + n2 - 1; }

    /// Variable index of node (u,j).
    int var(int u, int j) const {
        if (u == 0) return j;
        if (u == 1) return n0 + j;
        return n0 + n1 - 1 + j;
    }

    /// Inverse of var(): (u, j) of a variable index.
    std::pair<int, int> node_of(int idx) const {
        if (idx <= n0) return {0, idx};
        if (idx <= n0 + n1 - 1) return {1, idx - n0};
        return {2, idx - n0 - n1 + 1};
    }

    std::string node_name(int idx) const {
        auto [u, j] = node_of(idx);
        return "(" + std::to_string(u) + "," + std::to_string(j) + ")";
    }

    std::vector<std::string> node_names() const {
        std::vector<std::string> names(num_vars());
        for (int i = 0; i < num_vars(); ++i) names[i] = node_name(i);
        return names;
    }
};

/// Derived counts and per-part sums of the lower bounds.
struct TrainCounts {
    int m = 0;       // total trains
    int dm = 0;      // m2 - m1
    int m_bar = 0;   // free segments
    int dm_bar = 0;  // m2_bar - m1_bar
    std::array<int, 3> m_u{0, 0, 0};
    std::array<double, 3> T{0, 0, 0}; // sum of t_lower per part, seconds
    std::array<double, 3> S{0, 0, 0}; // sum of s_lower per part, seconds
    int capacity = 0;                 // n0 + n1 + n2
};

/// Deterministic shorthand placement: m_u trains on the highest-indexed
/// segments of part u.
inline std::vector<int> spread_occupancy(int n_u, int m_u) {
    std::vector<int> b(static_cast<size_t>(n_u), 0);
    for (int j = n_u - m_u + 1; j <= n_u; ++j) b[static_cast<size_t>(j) - 1] = 1;
    return b;
}

/// Check every structural invariant of a line description and return the
/// derived counts. m = 0 is legal here; it only yields zero frequency
/// downstream.
inline TrainCounts validate(const LineDescription& line) {
    if (line.n0 < 1) throw BadTopology("n0 must be >= 1");
    if (line.n1 < 2) throw BadTopology("n1 must be >= 2");
    if (line.n2 < 2) throw BadTopology("n2 must be >= 2");
    TrainCounts tc;
    for (int u = 0; u < 3; ++u) {
        const int n_u = line.part_size(u);
        if (static_cast<int>(line.seg[u].size()) != n_u)
            throw BadTopology("part " + std::to_string(u) + ": expected " + std::to_string(n_u) +
                              " segment parameter entries");
        if (static_cast<int>(line.occ[u].size()) != n_u)
            throw BadOccupancy("part " + std::to_string(u) + ": expected " + std::to_string(n_u) +
                               " occupancy entries");
        for (int j = 1; j <= n_u; ++j) {
            const auto& p = line.params(u, j);
            if (!(p.t_lower > 0))
                throw BadTopology("t_lower(" + std::to_string(u) + "," + std::to_string(j) +
                                  ") must be > 0");
            if (p.s_lower < 0)
                throw BadTopology("s_lower(" + std::to_string(u) + "," + std::to_string(j) +
                                  ") must be >= 0");
            int b = line.occ[u][static_cast<size_t>(j) - 1];
            if (b != 0 && b != 1)
                throw BadOccupancy("b(" + std::to_string(u) + "," + std::to_string(j) +
                                   ") must be 0 or 1");
            tc.m_u[u] += b;
            tc.T[u] += p.t_lower;
            tc.S[u] += p.s_lower;
        }
        if (tc.m_u[u] > n_u)
            throw BadOccupancy("part " + std::to_string(u) + " overfull");
    }
    tc.m = tc.m_u[0] + tc.m_u[1] + tc.m_u[2];
    tc.dm = tc.m_u[2] - tc.m_u[1];
    tc.capacity = line.n0 + line.n1 + line.n2;
    tc.m_bar = tc.capacity - tc.m;
    tc.dm_bar = (line.n2 - tc.m_u[2]) - (line.n1 - tc.m_u[1]);
    return tc;
}

} // namespace maxline
