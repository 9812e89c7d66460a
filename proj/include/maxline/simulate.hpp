#pragma once

#include <array>
#include <vector>

#include "maxline/build.hpp"
#include "maxline/line.hpp"
#include "maxline/maxplus.hpp"

namespace maxline {

/// Departure times per node, each node on its own event counter. Central
/// nodes see one event per step; branch nodes one event per two steps.
struct Trajectory {
    int n0 = 0, n1 = 0, n2 = 0;
    int central_events = 0;
    // series[0][j] for central node (0,j), j = 0..n0
    // series[1][j-1] for (1,j), j = 1..n1-1; series[2][j-1] likewise
    std::array<std::vector<std::vector<double>>, 3> series;

    const std::vector<double>& at(int u, int j) const {
        return series[u][static_cast<size_t>(u == 0 ? j : j - 1)];
    }
    std::vector<double>& at_mut(int u, int j) {
        return series[u][static_cast<size_t>(u == 0 ? j : j - 1)];
    }
    int node_count(int u) const { return static_cast<int>(series[u].size()); }
};

namespace detail {

inline double traj_value(const Trajectory& t, int u, int j, long long idx) {
    if (idx <= 0) return 0.0; // departures before the horizon start at time zero
    return t.at(u, j)[static_cast<size_t>(idx) - 1];
}

} // namespace detail

/// Direct recursion on the departure variables. Each step k computes the
/// k-th central departures plus the matching branch departures (branch 1 on
/// odd k, branch 2 on even k), taking the max over the incoming travel and
/// separation bounds. Zero-delay dependencies inside a step are evaluated in
/// topological order; the order depends only on the occupancy and the step
/// parity, so it is computed once per parity.
inline Trajectory simulate_departures(const LineDescription& line, int K) {
    validate(line);
    if (K < 1) throw InsufficientHorizon("simulate_departures: K must be >= 1");
    const int n0 = line.n0, n1 = line.n1, n2 = line.n2;

    Trajectory traj;
    traj.n0 = n0;
    traj.n1 = n1;
    traj.n2 = n2;
    traj.central_events = K;
    traj.series[0].resize(static_cast<size_t>(n0) + 1);
    traj.series[1].resize(static_cast<size_t>(n1) - 1);
    traj.series[2].resize(static_cast<size_t>(n2) - 1);
    for (auto& s : traj.series[0]) s.reserve(static_cast<size_t>(K));

    // Node ids local to a step: 0..n0 central, then the active branch's nodes.
    auto order_for_parity = [&](bool odd) {
        const int bu = odd ? 1 : 2;
        const int nb = line.part_size(bu) - 1;
        const int total = (n0 + 1) + nb;
        auto central_id = [&](int j) { return j; };
        auto branch_id = [&](int j) { return n0 + j; }; // j = 1..nb
        std::vector<std::vector<int>> succ(total);
        std::vector<int> indeg(total, 0);
        auto dep = [&](int from, int to) { // "to" waits for "from" within the step
            succ[from].push_back(to);
            ++indeg[to];
        };
        for (int j = 1; j <= n0; ++j)
            if (line.b(0, j) == 0) dep(central_id(j - 1), central_id(j));
        for (int j = 0; j <= n0 - 1; ++j)
            if (line.b_bar(0, j + 1) == 0) dep(central_id(j + 1), central_id(j));
        const int n_b = line.part_size(bu);
        if (line.b_bar(bu, 1) == 0) dep(branch_id(1), central_id(n0));  // divergence waits for entry clearance
        if (line.b(bu, n_b) == 0) dep(branch_id(n_b - 1), central_id(0)); // merge waits for the incoming train
        if (line.b(bu, 1) == 0) dep(central_id(n0), branch_id(1));
        if (line.b_bar(bu, n_b) == 0) dep(central_id(0), branch_id(n_b - 1));
        for (int j = 2; j <= n_b - 1; ++j)
            if (line.b(bu, j) == 0) dep(branch_id(j - 1), branch_id(j));
        for (int j = 1; j <= n_b - 2; ++j)
            if (line.b_bar(bu, j + 1) == 0) dep(branch_id(j + 1), branch_id(j));
        // Kahn
        std::vector<int> order;
        std::vector<int> queue;
        for (int v = 0; v < total; ++v)
            if (indeg[v] == 0) queue.push_back(v);
        while (!queue.empty()) {
            int v = queue.back();
            queue.pop_back();
            order.push_back(v);
            for (int w : succ[v])
                if (--indeg[w] == 0) queue.push_back(w);
        }
        // A ring of segments that is completely full (or completely empty)
        // through the junction leaves no train able to move first; the
        // matrix route rejects the same placements through its star.
        if (static_cast<int>(order.size()) != total)
            throw CyclicZeroDelay("simulate_departures: zero-delay dependency cycle within a step");
        return order;
    };
    const std::vector<int> order_odd = order_for_parity(true);
    const std::vector<int> order_even = order_for_parity(false);

    auto val = [&](int u, int j, long long idx) { return detail::traj_value(traj, u, j, idx); };

    for (long long k = 1; k <= K; ++k) {
        const bool odd = (k % 2) != 0;
        const int bu = odd ? 1 : 2;
        const int n_b = line.part_size(bu);
        const long long kb = odd ? (k + 1) / 2 : k / 2; // branch event this step
        for (int id : (odd ? order_odd : order_even)) {
            if (id <= n0) {
                const int j = id;
                double d = -std::numeric_limits<double>::infinity();
                if (j >= 1)
                    d = std::max(d, val(0, j - 1, k - line.b(0, j)) + line.params(0, j).t_lower);
                else // merge: travel over the branch's last segment
                    d = std::max(d, val(bu, n_b - 1, kb - line.b(bu, n_b)) + line.params(bu, n_b).t_lower);
                if (j <= n0 - 1)
                    d = std::max(d, val(0, j + 1, k - line.b_bar(0, j + 1)) + line.params(0, j + 1).s_lower);
                else // divergence: clearance of the branch's first segment
                    d = std::max(d, val(bu, 1, kb - line.b_bar(bu, 1)) + line.params(bu, 1).s_lower);
                traj.at_mut(0, j).push_back(d);
            } else {
                const int j = id - n0;
                double d = -std::numeric_limits<double>::infinity();
                if (j == 1)
                    d = std::max(d, val(0, n0, k - 2LL * line.b(bu, 1)) + line.params(bu, 1).t_lower);
                else
                    d = std::max(d, val(bu, j - 1, kb - line.b(bu, j)) + line.params(bu, j).t_lower);
                if (j == n_b - 1)
                    d = std::max(d, val(0, 0, k - 2LL * line.b_bar(bu, n_b)) + line.params(bu, n_b).s_lower);
                else
                    d = std::max(d, val(bu, j + 1, kb - line.b_bar(bu, j + 1)) + line.params(bu, j + 1).s_lower);
                traj.at_mut(bu, j).push_back(d);
            }
        }
    }
    return traj;
}

/// Iterate x(k) = P0* (x) ( max_{l>=1} P_l (x) x(k-l) ). History values for
/// k <= 0 default to zero; a different starting history may be supplied (the
/// asymptotic growth does not depend on it).
///
/// The P0* application is carried out arc by arc in topological order rather
/// than through a precomputed closure matrix, so every computed time is a
/// plain chain of single-entry additions. This keeps the result bit-identical
/// to a direct evaluation of the same constraints.
inline std::vector<MaxPlusVector> simulate_maxplus(const PolyMatrix& P, int K,
                                                   const MaxPlusVector* history = nullptr) {
    if (P.lo() < 0)
        throw NegativeDelayResidue("simulate_maxplus: matrix has negative delays");
    if (K < 1) throw InsufficientHorizon("simulate_maxplus: K must be >= 1");
    const int n = P.dim();
    if (history && static_cast<int>(history->size()) != n)
        throw DimensionMismatch("simulate_maxplus: history size");

    // topological order of the zero-delay entry graph (throws on a cycle)
    std::vector<int> order;
    if (P.has_delay(0)) {
        const MaxPlusMatrix& P0 = P.coeff(0);
        if (detail::entry_graph_has_cycle(P0))
            throw CyclicZeroDelay("simulate_maxplus: zero-delay graph has a cycle");
        std::vector<int> indeg(static_cast<size_t>(n), 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (P0(i, j).finite()) ++indeg[static_cast<size_t>(i)];
        std::vector<int> queue;
        for (int i = 0; i < n; ++i)
            if (indeg[static_cast<size_t>(i)] == 0) queue.push_back(i);
        while (!queue.empty()) {
            int u = queue.back();
            queue.pop_back();
            order.push_back(u);
            for (int i = 0; i < n; ++i)
                if (P0(i, u).finite() && --indeg[static_cast<size_t>(i)] == 0) queue.push_back(i);
        }
    } else {
        for (int i = 0; i < n; ++i) order.push_back(i);
    }

    const MaxPlusVector start =
        history ? *history : MaxPlusVector(static_cast<size_t>(n), MaxPlusScalar::one());
    std::vector<MaxPlusVector> xs;
    xs.reserve(static_cast<size_t>(K));
    for (int k = 1; k <= K; ++k) {
        MaxPlusVector x(static_cast<size_t>(n), MaxPlusScalar::eps());
        for (int l = std::max(1, P.lo()); l <= P.hi(); ++l) {
            const MaxPlusMatrix& C = P.coeff(l);
            const MaxPlusVector& past = (k - l <= 0) ? start : xs[static_cast<size_t>(k - l) - 1];
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (C(i, j).finite()) x[static_cast<size_t>(i)] += C(i, j) * past[static_cast<size_t>(j)];
        }
        if (P.has_delay(0)) {
            const MaxPlusMatrix& P0 = P.coeff(0);
            for (int i : order)
                for (int j = 0; j < n; ++j)
                    if (P0(i, j).finite()) x[static_cast<size_t>(i)] += P0(i, j) * x[static_cast<size_t>(j)];
        }
        xs.push_back(std::move(x));
    }
    return xs;
}

/// Matrix-form trajectory of a line: iterate the window system (one odd plus
/// one even step per iteration) and relabel the components back to physical
/// departures. Independent of simulate_departures except for sharing the
/// line description.
inline Trajectory simulate_line_maxplus(const LineDescription& line, int K) {
    if (K < 1) throw InsufficientHorizon("simulate_line_maxplus: K must be >= 1");
    WindowSystem ws = build_window_system(line);
    const int windows = (K + 1) / 2;
    std::vector<MaxPlusVector> xs = simulate_maxplus(ws.M, windows);

    Trajectory traj;
    traj.n0 = line.n0;
    traj.n1 = line.n1;
    traj.n2 = line.n2;
    traj.central_events = K;
    traj.series[0].resize(static_cast<size_t>(line.n0) + 1);
    traj.series[1].resize(static_cast<size_t>(line.n1) - 1);
    traj.series[2].resize(static_cast<size_t>(line.n2) - 1);
    for (int j = 0; j <= line.n0; ++j) {
        auto& s = traj.at_mut(0, j);
        for (int k = 1; k <= K; ++k) {
            const auto& x = xs[static_cast<size_t>((k + 1) / 2) - 1];
            const int idx = (k % 2) ? ws.central_odd(j) : ws.central_even(j);
            s.push_back(x[static_cast<size_t>(idx)].v);
        }
    }
    const int k1 = (K + 1) / 2, k2 = K / 2; // branch event counts within K steps
    for (int j = 1; j <= line.n1 - 1; ++j) {
        auto& s = traj.at_mut(1, j);
        for (int kb = 1; kb <= k1; ++kb)
            s.push_back(xs[static_cast<size_t>(kb) - 1][static_cast<size_t>(ws.branch1(j))].v);
    }
    for (int j = 1; j <= line.n2 - 1; ++j) {
        auto& s = traj.at_mut(2, j);
        for (int kb = 1; kb <= k2; ++kb)
            s.push_back(xs[static_cast<size_t>(kb) - 1][static_cast<size_t>(ws.branch2(j))].v);
    }
    return traj;
}

struct HeadwayMeasurement {
    double h0 = 0;          // seconds between central departures
    double h1 = 0, h2 = 0;  // seconds between branch departures
    double growth_rate = 0; // seconds per event on the central counter
    int transient_discarded = 0;
};

namespace detail {

// Does the series tail repeat with a fixed additive increment of period p?
// Three consecutive blocks are compared to guard against aliasing.
inline bool tail_periodic(const std::vector<double>& s, int p) {
    const int L = static_cast<int>(s.size());
    if (3 * p > L - 1) return false;
    const double scale = std::max(1.0, std::abs(s[static_cast<size_t>(L) - 1]));
    const double tol = 1e-9 * scale;
    const double d1 = s[static_cast<size_t>(L) - 1] - s[static_cast<size_t>(L - p) - 1];
    const double d2 = s[static_cast<size_t>(L - p) - 1] - s[static_cast<size_t>(L - 2 * p) - 1];
    const double d3 = s[static_cast<size_t>(L - 2 * p) - 1] - s[static_cast<size_t>(L - 3 * p) - 1];
    return std::abs(d1 - d2) <= tol && std::abs(d2 - d3) <= tol;
}

inline double tail_rate(const std::vector<double>& s, int p) {
    const int L = static_cast<int>(s.size());
    return (s[static_cast<size_t>(L) - 1] - s[static_cast<size_t>(L - p) - 1]) / p;
}

inline double window_rate(const std::vector<double>& s, int first_kept) {
    const int L = static_cast<int>(s.size());
    if (L - first_kept < 2)
        throw InsufficientHorizon("measure_headways: series too short for the transient");
    return (s[static_cast<size_t>(L) - 1] - s[static_cast<size_t>(first_kept)]) /
           (L - 1 - first_kept);
}

} // namespace detail

/// Average growth over the post-transient tail. transient < 0 picks the
/// default: a quarter of the horizon, at least 500 events.
///
/// The trajectory of the line couples to a periodic regime with a constant
/// increment per period; the measurement first searches for that period
/// (one even period shared by every component) and then reads the exact
/// slope. Without a detected period it falls back to the window average.
inline HeadwayMeasurement measure_headways(const Trajectory& traj, int transient = -1) {
    const int K = traj.central_events;
    int T = transient >= 0 ? transient : std::max(500, K / 4);
    if (K - T < 2)
        throw InsufficientHorizon("measure_headways: horizon " + std::to_string(K) +
                                  " too small for transient " + std::to_string(T));
    HeadwayMeasurement hm;
    hm.transient_discarded = T;

    const int span = K - T;
    int period = 0;
    for (int p = 2; 3 * p <= span; p += 2) {
        bool ok = true;
        for (int j = 0; ok && j <= traj.n0; ++j) ok = detail::tail_periodic(traj.at(0, j), p);
        for (int u = 1; ok && u <= 2; ++u)
            for (int idx = 0; ok && idx < traj.node_count(u); ++idx)
                ok = detail::tail_periodic(traj.series[u][static_cast<size_t>(idx)], p / 2);
        if (ok) {
            period = p;
            break;
        }
    }

    double sum0 = 0;
    for (int j = 0; j <= traj.n0; ++j)
        sum0 += period ? detail::tail_rate(traj.at(0, j), period)
                       : detail::window_rate(traj.at(0, j), T);
    hm.h0 = sum0 / (traj.n0 + 1);
    hm.growth_rate = hm.h0;
    for (int u = 1; u <= 2; ++u) {
        double sum = 0;
        for (int idx = 0; idx < traj.node_count(u); ++idx) {
            const auto& s = traj.series[u][static_cast<size_t>(idx)];
            sum += period ? detail::tail_rate(s, period / 2) : detail::window_rate(s, T / 2);
        }
        (u == 1 ? hm.h1 : hm.h2) = sum / traj.node_count(u);
    }
    return hm;
}

} // namespace maxline
