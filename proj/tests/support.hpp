#pragma once

// Shared test helpers: random line instances, the brute-force oracles the
// implementation is checked against, and a few small builders.

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "maxline/maxline.hpp"

namespace testsupport {

using namespace maxline;

inline LineDescription uniform_line(int n0, int n1, int n2, double t, double s) {
    LineDescription line;
    line.n0 = n0;
    line.n1 = n1;
    line.n2 = n2;
    for (int u = 0; u < 3; ++u) {
        const int n_u = line.part_size(u);
        line.seg[u].assign(static_cast<size_t>(n_u), SegmentParams{t, s});
        line.occ[u].assign(static_cast<size_t>(n_u), 0);
    }
    return line;
}

/// Desk instance used across the integration tests.
inline LineDescription desk_line(int m0 = 2, int m1 = 2, int m2 = 2) {
    LineDescription line = uniform_line(3, 5, 5, 120.0, 30.0);
    line.occ[0] = spread_occupancy(3, m0);
    line.occ[1] = spread_occupancy(5, m1);
    line.occ[2] = spread_occupancy(5, m2);
    return line;
}

struct RandomLineOptions {
    int n0_min = 2, n0_max = 6;
    int nb_min = 3, nb_max = 8;
    double t_min = 30, t_max = 180;
    double s_min = 10, s_max = 90;
    bool require_finite_headway = true;
};

/// Random instance in the documented parameter box. Placements are uniform
/// occupancy bits, redrawn until every loading denominator is positive when
/// a finite headway is required.
inline LineDescription random_line(std::mt19937& rng, const RandomLineOptions& opt = {}) {
    std::uniform_int_distribution<int> dn0(opt.n0_min, opt.n0_max);
    std::uniform_int_distribution<int> dnb(opt.nb_min, opt.nb_max);
    std::uniform_real_distribution<double> dt(opt.t_min, opt.t_max);
    std::uniform_real_distribution<double> ds(opt.s_min, opt.s_max);
    std::uniform_int_distribution<int> bit(0, 1);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        LineDescription line;
        line.n0 = dn0(rng);
        line.n1 = dnb(rng);
        line.n2 = dnb(rng);
        for (int u = 0; u < 3; ++u) {
            const int n_u = line.part_size(u);
            line.seg[u].resize(static_cast<size_t>(n_u));
            line.occ[u].resize(static_cast<size_t>(n_u));
            for (int j = 0; j < n_u; ++j) {
                line.seg[u][static_cast<size_t>(j)] = SegmentParams{dt(rng), ds(rng)};
                line.occ[u][static_cast<size_t>(j)] = bit(rng);
            }
        }
        if (!opt.require_finite_headway) return line;
        TrainCounts tc = validate(line);
        const bool finite = (tc.m - tc.dm) > 0 && (tc.m + tc.dm) > 0 &&
                            (tc.m_bar - tc.dm_bar) > 0 && (tc.m_bar + tc.dm_bar) > 0 &&
                            (line.n2 - tc.dm) > 0 && (line.n1 + tc.dm) > 0;
        if (finite) return line;
    }
    throw std::runtime_error("random_line: no feasible placement found");
}

/// All elementary cycles of a precedence graph (Johnson-style backtracking),
/// reported as (weight, duration, node sequence). Throws if the cycle count
/// explodes; test graphs are small.
struct CycleRecord {
    double weight = 0;
    int duration = 0;
    std::vector<int> nodes;
    std::vector<int> arcs; // arc ids, aligned with nodes
};

inline void enumerate_cycles_from(const PrecedenceGraph& g,
                                  const std::vector<std::vector<int>>& arcs_out, int start,
                                  std::vector<int>& path_nodes, std::vector<int>& path_arcs,
                                  std::vector<char>& on_path, std::vector<CycleRecord>& out,
                                  size_t limit) {
    const int u = path_nodes.back();
    for (int aid : arcs_out[static_cast<size_t>(u)]) {
        const auto& arc = g.arcs[static_cast<size_t>(aid)];
        if (arc.head < start) continue; // canonical: smallest node first
        if (arc.head == start) {
            CycleRecord rec;
            rec.nodes = path_nodes;
            rec.arcs = path_arcs;
            rec.arcs.push_back(aid);
            for (int pa : rec.arcs) {
                rec.weight += g.arcs[static_cast<size_t>(pa)].weight;
                rec.duration += g.arcs[static_cast<size_t>(pa)].duration;
            }
            out.push_back(std::move(rec));
            if (out.size() > limit) throw std::runtime_error("cycle enumeration limit exceeded");
        } else if (!on_path[static_cast<size_t>(arc.head)]) {
            on_path[static_cast<size_t>(arc.head)] = 1;
            path_nodes.push_back(arc.head);
            path_arcs.push_back(aid);
            enumerate_cycles_from(g, arcs_out, start, path_nodes, path_arcs, on_path, out, limit);
            path_arcs.pop_back();
            path_nodes.pop_back();
            on_path[static_cast<size_t>(arc.head)] = 0;
        }
    }
}

inline std::vector<CycleRecord> enumerate_elementary_cycles(const PrecedenceGraph& g,
                                                            size_t limit = 2000000) {
    std::vector<std::vector<int>> arcs_out(static_cast<size_t>(g.n));
    for (int a = 0; a < static_cast<int>(g.arcs.size()); ++a)
        arcs_out[static_cast<size_t>(g.arcs[static_cast<size_t>(a)].tail)].push_back(a);
    std::vector<CycleRecord> out;
    std::vector<char> on_path(static_cast<size_t>(g.n), 0);
    for (int s = 0; s < g.n; ++s) {
        std::vector<int> path_nodes{s}, path_arcs;
        on_path[static_cast<size_t>(s)] = 1;
        enumerate_cycles_from(g, arcs_out, s, path_nodes, path_arcs, on_path, out, limit);
        on_path[static_cast<size_t>(s)] = 0;
    }
    return out;
}

/// Brute-force maximum cycle ratio by full enumeration.
inline double brute_force_max_ratio(const PrecedenceGraph& g) {
    auto cycles = enumerate_elementary_cycles(g);
    double best = -kInf;
    for (const auto& c : cycles)
        if (c.duration > 0) best = std::max(best, c.weight / c.duration);
    return best;
}

/// Longest-path matrix of an acyclic max-plus matrix by topological DP,
/// including the trivial path (identity diagonal).
inline MaxPlusMatrix longest_path_closure(const MaxPlusMatrix& A) {
    const int n = A.dim();
    // topological order of the entry graph (arc j -> i for entry (i,j))
    std::vector<int> indeg(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (A(i, j).finite()) ++indeg[static_cast<size_t>(i)];
    std::vector<int> order, queue;
    for (int i = 0; i < n; ++i)
        if (indeg[static_cast<size_t>(i)] == 0) queue.push_back(i);
    while (!queue.empty()) {
        int u = queue.back();
        queue.pop_back();
        order.push_back(u);
        for (int i = 0; i < n; ++i)
            if (A(i, u).finite() && --indeg[static_cast<size_t>(i)] == 0) queue.push_back(i);
    }
    MaxPlusMatrix R = MaxPlusMatrix::identity(n);
    for (int u : order)
        for (int i = 0; i < n; ++i) {
            if (!A(i, u).finite()) continue;
            for (int j = 0; j < n; ++j) R(i, j) += A(i, u) * R(u, j);
        }
    return R;
}

inline std::mt19937 seeded_rng(unsigned seed) { return std::mt19937(seed); }

/// Cycle families of the two-step graph, classified by the segment bounds
/// composing each arc: fw (travel bounds only), bw (separation bounds only),
/// br (one branch contributing travel bounds, the other separation bounds),
/// min (loops and single-segment junction pairs), within (recirculations
/// whose bounds stay inside one part, including the two-arc cycles), other.
enum class Family { fw, bw, br, min, within, other };

struct ClassifiedCycle {
    Family family;
    double mean;
};

inline std::vector<ClassifiedCycle> classify_cycles(const ComposedSystem& sys) {
    PrecedenceGraph g = to_graph(sys.B);
    auto cycles = enumerate_elementary_cycles(g);
    std::vector<ClassifiedCycle> out;
    for (const auto& c : cycles) {
        if (c.duration <= 0) throw std::runtime_error("nonpositive cycle duration");
        std::vector<Prim> prims;
        for (int aid : c.arcs) {
            const auto& arc = g.arcs[static_cast<size_t>(aid)];
            auto it = sys.tags.find({arc.head, arc.tail, arc.duration});
            if (it == sys.tags.end()) throw std::runtime_error("untagged arc");
            prims.insert(prims.end(), it->second.begin(), it->second.end());
        }
        bool all_t = true, all_s = true;
        std::set<int> parts, t_parts, s_parts;
        std::set<std::pair<int, int>> segments;
        for (const auto& p : prims) {
            (p.kind == 't' ? all_s : all_t) = false;
            parts.insert(p.u);
            (p.kind == 't' ? t_parts : s_parts).insert(p.u);
            segments.insert({p.u, p.j});
        }
        const size_t len = c.nodes.size();
        Family fam = Family::other;
        if (len == 1 || (len == 2 && segments.size() == 1))
            fam = Family::min;
        else if (all_t)
            fam = Family::fw;
        else if (all_s)
            fam = Family::bw;
        else if (parts == std::set<int>{1, 2} && t_parts.size() == 1 && s_parts.size() == 1 &&
                 t_parts != s_parts)
            fam = Family::br;
        else if (parts.size() == 1)
            fam = Family::within;
        out.push_back({fam, c.weight / c.duration});
    }
    return out;
}

inline double family_max(const std::vector<ClassifiedCycle>& cs, Family f) {
    double m = -kInf;
    for (const auto& c : cs)
        if (c.family == f) m = std::max(m, c.mean);
    return m;
}

} // namespace testsupport
