#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "maxline/line.hpp"

namespace maxline {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

namespace detail {
// A loading ratio: headway contribution num/den, impossible (+inf) when the
// denominator is not positive.
inline double load_ratio(double num, double den) { return den > 0 ? num / den : kInf; }
} // namespace detail

/// Names of the eight refined headway terms, in priority order.
enum class Term { fw1, fw2, min0, min12, bw1, bw2, br1, br2 };

inline const char* term_name(Term t) {
    switch (t) {
        case Term::fw1: return "fw1";
        case Term::fw2: return "fw2";
        case Term::min0: return "min0";
        case Term::min12: return "min12";
        case Term::bw1: return "bw1";
        case Term::bw2: return "bw2";
        case Term::br1: return "br1";
        case Term::br2: return "br2";
    }
    return "?";
}

/// Report for one (m, dm) loading of a line.
struct PhaseReport {
    int m = 0;
    int dm = 0;
    bool feasible = false;
    double h_fw = kInf, h_min = kInf, h_bw = kInf, h_br = kInf; // seconds
    double h0 = kInf;                                           // seconds
    double f0 = 0, f1 = 0, f2 = 0;                              // trains per second
    std::vector<std::string> binding;                           // coarse terms at the max
    std::vector<Term> binding_refined;                          // refined terms at the max
    std::string regime;                                         // canonical label (highest-priority refined term)
};

/// Travel-bound headway: the slower of the two forward train loops.
inline double h_forward(const TrainCounts& c) {
    return std::max(detail::load_ratio(c.T[0] + c.T[1], c.m - c.dm),
                    detail::load_ratio(c.T[0] + c.T[2], c.m + c.dm));
}

/// Infrastructure floor: every segment bounds the local headway by t+s,
/// halved on the branches where only every second train passes.
inline double h_minimum(const LineDescription& line) {
    double h = 0;
    for (int j = 1; j <= line.n0; ++j) {
        const auto& p = line.params(0, j);
        h = std::max(h, p.t_lower + p.s_lower);
    }
    for (int u = 1; u <= 2; ++u)
        for (int j = 1; j <= line.part_size(u); ++j) {
            const auto& p = line.params(u, j);
            h = std::max(h, (p.t_lower + p.s_lower) / 2);
        }
    return h;
}

/// Separation-bound headway: the slower of the two backward (free-slot) loops.
inline double h_backward(const TrainCounts& c) {
    return std::max(detail::load_ratio(c.S[0] + c.S[1], c.m_bar - c.dm_bar),
                    detail::load_ratio(c.S[0] + c.S[2], c.m_bar + c.dm_bar));
}

/// Branch-interaction headway from the two cycles crossing both branches.
inline double h_branches(const TrainCounts& c, int n1, int n2) {
    return std::max(detail::load_ratio(c.T[1] + c.S[2], 2.0 * (n2 - c.dm)),
                    detail::load_ratio(c.S[1] + c.T[2], 2.0 * (n1 + c.dm)));
}

/// Is (m, dm) realizable as nonnegative per-part counts within capacity?
inline bool loading_feasible(const LineDescription& line, int m, int dm) {
    if (m < 0) return false;
    for (int m1 = std::max(0, -dm); m1 <= line.n1; ++m1) {
        const int m2 = m1 + dm;
        if (m2 < 0 || m2 > line.n2) continue;
        const int m0 = m - m1 - m2;
        if (m0 >= 0 && m0 <= line.n0) return true;
    }
    return false;
}

/// TrainCounts for a prescribed loading (placement-independent sums).
inline TrainCounts counts_for_loading(const LineDescription& line, int m, int dm) {
    TrainCounts tc;
    tc.m = m;
    tc.dm = dm;
    tc.capacity = line.n0 + line.n1 + line.n2;
    tc.m_bar = tc.capacity - m;
    tc.dm_bar = (line.n2 - line.n1) - dm;
    for (int u = 0; u < 3; ++u)
        for (int j = 1; j <= line.part_size(u); ++j) {
            tc.T[u] += line.params(u, j).t_lower;
            tc.S[u] += line.params(u, j).s_lower;
        }
    return tc;
}

/// Closed-form headway and frequency at a given loading, with the binding
/// terms. Infeasible loadings report zero frequency and no binding set.
inline PhaseReport headway(const LineDescription& line, int m, int dm) {
    PhaseReport r;
    r.m = m;
    r.dm = dm;
    r.feasible = loading_feasible(line, m, dm);

    TrainCounts c = counts_for_loading(line, m, dm);
    const double fw1 = detail::load_ratio(c.T[0] + c.T[1], c.m - c.dm);
    const double fw2 = detail::load_ratio(c.T[0] + c.T[2], c.m + c.dm);
    const double bw1 = detail::load_ratio(c.S[0] + c.S[1], c.m_bar - c.dm_bar);
    const double bw2 = detail::load_ratio(c.S[0] + c.S[2], c.m_bar + c.dm_bar);
    const double br1 = detail::load_ratio(c.T[1] + c.S[2], 2.0 * (line.n2 - c.dm));
    const double br2 = detail::load_ratio(c.S[1] + c.T[2], 2.0 * (line.n1 + c.dm));
    double min0 = 0, min12 = 0;
    for (int j = 1; j <= line.n0; ++j) {
        const auto& p = line.params(0, j);
        min0 = std::max(min0, p.t_lower + p.s_lower);
    }
    for (int u = 1; u <= 2; ++u)
        for (int j = 1; j <= line.part_size(u); ++j) {
            const auto& p = line.params(u, j);
            min12 = std::max(min12, (p.t_lower + p.s_lower) / 2);
        }

    r.h_fw = std::max(fw1, fw2);
    r.h_min = std::max(min0, min12);
    r.h_bw = std::max(bw1, bw2);
    r.h_br = std::max(br1, br2);
    r.h0 = std::max({r.h_fw, r.h_min, r.h_bw, r.h_br});

    if (!r.feasible) {
        r.f0 = r.f1 = r.f2 = 0;
        return r;
    }
    if (std::isfinite(r.h0) && r.h0 > 0) {
        r.f0 = 1.0 / r.h0;
        r.f1 = r.f2 = r.f0 / 2;
    }

    const double tol = 1e-9;
    const double vals[8] = {fw1, fw2, min0, min12, bw1, bw2, br1, br2};
    const Term terms[8] = {Term::fw1, Term::fw2, Term::min0, Term::min12,
                           Term::bw1, Term::bw2, Term::br1, Term::br2};
    auto at_max = [&](double v) {
        if (std::isinf(r.h0)) return std::isinf(v);
        return std::abs(v - r.h0) <= tol;
    };
    for (int i = 0; i < 8; ++i)
        if (at_max(vals[i])) r.binding_refined.push_back(terms[i]);
    r.regime = term_name(r.binding_refined.front());
    auto coarse = [&](const char* name, double v) {
        if (at_max(v)) r.binding.push_back(name);
    };
    coarse("fw", r.h_fw);
    coarse("min", r.h_min);
    coarse("bw", r.h_bw);
    coarse("br", r.h_br);
    return r;
}

/// Dense (m, dm) grid, m-major order.
inline std::vector<PhaseReport> sweep(const LineDescription& line, int m_min, int m_max,
                                      int dm_min, int dm_max) {
    std::vector<PhaseReport> out;
    for (int m = m_min; m <= m_max; ++m)
        for (int dm = dm_min; dm <= dm_max; ++dm) out.push_back(headway(line, m, dm));
    return out;
}

/// Best branch imbalance for a given fleet size: exhaustive scan over all
/// feasible dm; ties resolved toward small |dm|, negative before positive.
inline std::pair<int, double> optimal_dm(const LineDescription& line, int m) {
    int best_dm = 0;
    double best_f = -1;
    bool found = false;
    for (int dm = -line.n2; dm <= line.n1; ++dm) {
        if (!loading_feasible(line, m, dm)) continue;
        const double f = headway(line, m, dm).f0;
        const bool better =
            !found || f > best_f + 0 ||
            (f == best_f && (std::abs(dm) < std::abs(best_dm) ||
                             (std::abs(dm) == std::abs(best_dm) && dm < best_dm)));
        if (better) {
            best_dm = dm;
            best_f = f;
            found = true;
        }
    }
    if (!found) return {0, 0.0};
    return {best_dm, best_f};
}

} // namespace maxline
