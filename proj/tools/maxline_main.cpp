// Command-line front end: validate a line config, compute the closed-form
// phase report, run the trajectory engines, sweep the (m, dm) plane, or dump
// precedence graphs as DOT.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "maxline/maxline.hpp"

namespace {

using namespace maxline;

void write_out(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file: " + out_path);
    f << text;
}

int resolve_m(const LineDescription& line, std::optional<int> m_opt) {
    if (m_opt) return *m_opt;
    return validate(line).m;
}
int resolve_dm(const LineDescription& line, std::optional<int> dm_opt) {
    if (dm_opt) return *dm_opt;
    return validate(line).dm;
}

int cmd_validate(const std::string& config) {
    LineDescription line = load_line_config(config);
    TrainCounts tc = validate(line);
    std::cout << "nodes: " << line.num_vars() << "  (n0=" << line.n0 << " n1=" << line.n1
              << " n2=" << line.n2 << ")\n";
    std::cout << "capacity: " << tc.capacity << " segments\n";
    std::cout << "m: " << tc.m << "  (m0=" << tc.m_u[0] << " m1=" << tc.m_u[1]
              << " m2=" << tc.m_u[2] << ")  dm: " << tc.dm << "\n";
    for (int u = 0; u < 3; ++u)
        std::cout << "part " << u << ": T=" << fmt_num(tc.T[u]) << " s  S=" << fmt_num(tc.S[u])
                  << " s\n";
    if (tc.m == 0) std::cout << "note: no trains placed; frequency is zero\n";
    return 0;
}

int cmd_analyze(const std::string& config, std::optional<int> m_opt, std::optional<int> dm_opt,
                const std::string& out_path) {
    LineDescription line = load_line_config(config);
    validate(line);
    const int m = resolve_m(line, m_opt);
    const int dm = resolve_dm(line, dm_opt);
    PhaseReport r = headway(line, m, dm);
    if (!r.feasible) {
        std::cerr << "infeasible loading: m=" << m << " dm=" << dm
                  << " cannot be split over the three parts within capacity\n";
        return 2;
    }
    std::cout << phase_report_text(r);
    write_out(sweep_csv_header(false) + sweep_csv_row(r), out_path);
    return 0;
}

int cmd_simulate(const std::string& config, int K, const std::string& out_path,
                 const std::string& engine) {
    LineDescription line = load_line_config(config);
    validate(line);
    if (K < 100) throw InsufficientHorizon("simulate: need K >= 100, got " + std::to_string(K));
    Trajectory traj =
        engine == "maxplus" ? simulate_line_maxplus(line, K) : simulate_departures(line, K);
    HeadwayMeasurement hm = measure_headways(traj);
    const bool csv_to_stdout = out_path.empty() || out_path == "-";
    std::ostream& info = csv_to_stdout ? std::cerr : std::cout;
    info << "engine: " << (engine == "maxplus" ? "maxplus" : "departures") << "  K=" << K
         << "  transient=" << hm.transient_discarded << "\n";
    info << "h0 = " << fmt_num(hm.h0) << " s  h1 = " << fmt_num(hm.h1)
         << " s  h2 = " << fmt_num(hm.h2) << " s\n";
    info << "growth rate = " << fmt_num(hm.growth_rate) << " s/event  f0 = "
         << fmt_num(hm.h0 > 0 ? 3600.0 / hm.h0 : 0.0) << " trains/h\n";
    write_out(trajectory_csv(traj), out_path);
    return 0;
}

int cmd_sweep(const std::string& config, const std::string& m_range, const std::string& dm_range,
              bool with_optimal, const std::string& out_path) {
    LineDescription line = load_line_config(config);
    validate(line);
    const int cap = line.n0 + line.n1 + line.n2;
    auto parse_range = [](const std::string& s, int lo_def, int hi_def) {
        if (s.empty()) return std::pair<int, int>{lo_def, hi_def};
        auto colon = s.find(':');
        if (colon == std::string::npos) throw ConfigError("range must be a:b, got '" + s + "'");
        return std::pair<int, int>{std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
    };
    auto [m_lo, m_hi] = parse_range(m_range, 0, cap);
    auto [dm_lo, dm_hi] = parse_range(dm_range, -line.n2, line.n1);
    std::string out = sweep_csv_header(with_optimal);
    for (int m = m_lo; m <= m_hi; ++m) {
        int dm_star = with_optimal ? optimal_dm(line, m).first : 0;
        for (int dm = dm_lo; dm <= dm_hi; ++dm)
            out += sweep_csv_row(headway(line, m, dm), with_optimal, dm_star);
    }
    write_out(out, out_path);
    return 0;
}

int cmd_graph(const std::string& config, const std::string& target, const std::string& out_path) {
    LineDescription line = load_line_config(config);
    validate(line);
    PolyMatrix P;
    if (target == "A1" || target == "A2") {
        auto [A1, A2] = build_parity_matrices(line);
        P = (target == "A1") ? A1 : A2;
    } else if (target == "B") {
        P = build_composed(line);
    } else {
        throw ConfigError("graph target must be A1, A2 or B");
    }
    PrecedenceGraph g = to_graph(P);
    g.node_names = line.node_names();
    write_out(to_dot(g, target), out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"max-plus headway analysis of a metro line with one junction"};
    app.require_subcommand(1);

    std::string config, out_path, target = "B", m_range, dm_range, engine = "departures";
    std::optional<int> m_opt, dm_opt;
    int K = 2000;
    bool with_optimal = false;

    auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", config, "line config file (JSON or TOML)")->required();
    };
    CLI::App* v = app.add_subcommand("validate", "check a line config and print its counts");
    add_config(v);
    CLI::App* a = app.add_subcommand("analyze", "closed-form headway and frequency report");
    add_config(a);
    a->add_option("--m", m_opt, "total train count override");
    a->add_option("--dm", dm_opt, "branch imbalance override");
    a->add_option("--out", out_path, "CSV output path (default stdout)");
    CLI::App* s = app.add_subcommand("simulate", "run a trajectory engine and measure headways");
    add_config(s);
    s->add_option("--k", K, "number of central departures to simulate (>= 100)");
    s->add_option("--engine", engine, "departures (default) or maxplus")
        ->check(CLI::IsMember({"departures", "maxplus"}));
    s->add_option("--out", out_path, "trajectory CSV path (default stdout)");
    CLI::App* w = app.add_subcommand("sweep", "grid of phase reports over (m, dm)");
    add_config(w);
    w->add_option("--m-range", m_range, "a:b inclusive (default 0:capacity)");
    w->add_option("--dm-range", dm_range, "a:b inclusive (default -n2:n1)");
    w->add_flag("--with-optimal-dm", with_optimal, "append the per-m optimal dm column");
    w->add_option("--out", out_path, "CSV output path (default stdout)");
    CLI::App* g = app.add_subcommand("graph", "DOT text of a precedence graph");
    add_config(g);
    g->add_option("--target", target, "A1, A2 or B (default B)")
        ->check(CLI::IsMember({"A1", "A2", "B"}));
    g->add_option("--out", out_path, "DOT output path (default stdout)");

    try {
        app.parse(argc, argv);
        if (v->parsed()) return cmd_validate(config);
        if (a->parsed()) return cmd_analyze(config, m_opt, dm_opt, out_path);
        if (s->parsed()) return cmd_simulate(config, K, out_path, engine);
        if (w->parsed()) return cmd_sweep(config, m_range, dm_range, with_optimal, out_path);
        if (g->parsed()) return cmd_graph(config, target, out_path);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BadTopology& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BadOccupancy& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InfeasiblePlacement& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InsufficientHorizon& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
