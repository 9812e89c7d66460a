#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include "maxline/analytics.hpp"
#include "maxline/simulate.hpp"

namespace maxline {

/// Deterministic number formatting for CSV output; infinities print as "inf".
inline std::string fmt_num(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

inline std::string sweep_csv_header(bool with_optimal) {
    std::string h =
        "m,dm,feasible,h_fw,h_min,h_bw,h_br,h0_seconds,f0_per_hour,f_branch_per_hour,binding";
    if (with_optimal) h += ",dm_star";
    return h + "\n";
}

inline std::string sweep_csv_row(const PhaseReport& r, bool with_optimal = false,
                                 int dm_star = 0) {
    std::string binding;
    for (const auto& t : r.binding) {
        if (!binding.empty()) binding += "|";
        binding += t;
    }
    std::string row = std::to_string(r.m) + "," + std::to_string(r.dm) + "," +
                      (r.feasible ? "1" : "0") + "," + fmt_num(r.h_fw) + "," + fmt_num(r.h_min) +
                      "," + fmt_num(r.h_bw) + "," + fmt_num(r.h_br) + "," + fmt_num(r.h0) + "," +
                      fmt_num(r.f0 * 3600.0) + "," + fmt_num(r.f1 * 3600.0) + "," + binding;
    if (with_optimal) row += "," + std::to_string(dm_star);
    return row + "\n";
}

/// Trajectory CSV: one row per departure event, k-major, nodes in (u,j)
/// lexicographic order within each k. k counts each node's own departures.
inline std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "k,u,j,time_seconds\n";
    long long kmax = traj.central_events;
    for (long long k = 1; k <= kmax; ++k) {
        for (int j = 0; j <= traj.n0; ++j) {
            const auto& s = traj.at(0, j);
            if (k <= static_cast<long long>(s.size()))
                out += std::to_string(k) + ",0," + std::to_string(j) + "," +
                       fmt_num(s[static_cast<size_t>(k) - 1]) + "\n";
        }
        for (int u = 1; u <= 2; ++u)
            for (int j = 1; j <= traj.node_count(u); ++j) {
                const auto& s = traj.at(u, j);
                if (k <= static_cast<long long>(s.size()))
                    out += std::to_string(k) + "," + std::to_string(u) + "," + std::to_string(j) +
                           "," + fmt_num(s[static_cast<size_t>(k) - 1]) + "\n";
            }
    }
    return out;
}

inline std::string phase_report_text(const PhaseReport& r) {
    std::string out;
    out += "loading: m=" + std::to_string(r.m) + " dm=" + std::to_string(r.dm) +
           (r.feasible ? "" : "  (infeasible)") + "\n";
    out += "  h_fw  = " + fmt_num(r.h_fw) + " s\n";
    out += "  h_min = " + fmt_num(r.h_min) + " s\n";
    out += "  h_bw  = " + fmt_num(r.h_bw) + " s\n";
    out += "  h_br  = " + fmt_num(r.h_br) + " s\n";
    out += "  h0    = " + fmt_num(r.h0) + " s   (branch headway " + fmt_num(2 * r.h0) + " s)\n";
    out += "  f0    = " + fmt_num(r.f0 * 3600.0) + " trains/h   (branches " +
           fmt_num(r.f1 * 3600.0) + " trains/h)\n";
    std::string binding;
    for (const auto& t : r.binding) {
        if (!binding.empty()) binding += "|";
        binding += t;
    }
    out += "  binding: " + binding + "   regime: " + r.regime + "\n";
    return out;
}

} // namespace maxline
