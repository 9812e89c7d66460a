#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxline/line.hpp"

namespace maxline {

namespace detail {

// Both accepted formats reduce to "key -> list of numbers".
using KeyValues = std::map<std::string, std::vector<double>>;

inline KeyValues parse_json_config(const std::string& text, const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(path + ": JSON parse error: " + e.what());
    }
    if (!j.is_object()) throw ConfigError(path + ": expected a JSON object");
    KeyValues kv;
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::vector<double> vals;
        if (it.value().is_number()) {
            vals.push_back(it.value().get<double>());
        } else if (it.value().is_array()) {
            for (const auto& x : it.value()) {
                if (!x.is_number())
                    throw ConfigError(path + ": key '" + it.key() + "': array entries must be numbers");
                vals.push_back(x.get<double>());
            }
        } else {
            throw ConfigError(path + ": key '" + it.key() + "': expected number or array");
        }
        kv[it.key()] = vals;
    }
    return kv;
}

// Minimal TOML subset: "key = value" lines, values are numbers or
// [v, v, ...] arrays, # starts a comment.
inline KeyValues parse_toml_config(const std::string& text, const std::string& path) {
    KeyValues kv;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
        std::vector<double> vals;
        auto parse_num = [&](const std::string& s) {
            try {
                size_t used = 0;
                double d = std::stod(s, &used);
                if (used != s.size()) throw std::invalid_argument(s);
                return d;
            } catch (const std::exception&) {
                throw ConfigError(path + ":" + std::to_string(lineno) + ": bad number '" + s + "'");
            }
        };
        if (!val.empty() && val.front() == '[') {
            if (val.back() != ']')
                throw ConfigError(path + ":" + std::to_string(lineno) + ": unterminated array");
            std::string body = val.substr(1, val.size() - 2);
            std::string item;
            std::istringstream items(body);
            while (std::getline(items, item, ',')) {
                item = trim(item);
                if (!item.empty()) vals.push_back(parse_num(item));
            }
        } else {
            vals.push_back(parse_num(val));
        }
        kv[key] = vals;
    }
    return kv;
}

inline int require_int(const KeyValues& kv, const std::string& key, const std::string& path) {
    auto it = kv.find(key);
    if (it == kv.end() || it->second.size() != 1)
        throw ConfigError(path + ": missing integer key '" + key + "'");
    double d = it->second.front();
    int i = static_cast<int>(d);
    if (static_cast<double>(i) != d)
        throw ConfigError(path + ": key '" + key + "' must be an integer");
    return i;
}

// Array key for part u; a single value means "uniform over the part".
inline std::vector<double> part_array(const KeyValues& kv, const std::string& base, int u,
                                      int n_u, const std::string& path, bool* present = nullptr) {
    auto it = kv.find(base + std::to_string(u));
    if (it == kv.end()) {
        if (present) *present = false;
        return {};
    }
    if (present) *present = true;
    std::vector<double> v = it->second;
    if (v.size() == 1) v.assign(static_cast<size_t>(n_u), v.front());
    if (static_cast<int>(v.size()) != n_u)
        throw ConfigError(path + ": key '" + base + std::to_string(u) + "' needs " +
                          std::to_string(n_u) + " entries (or one uniform value)");
    return v;
}

} // namespace detail

/// Load a line description from a JSON or TOML file. Keys: n0,n1,n2;
/// per part u: t_lower<u> and s_lower<u> (or r_lower<u>, w_lower<u>,
/// g_lower<u>); occupancy b<u> or the shorthand count m<u> (trains placed on
/// the highest-indexed segments). Times are seconds.
inline LineDescription load_line_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    const std::string text = buf.str();

    detail::KeyValues kv;
    const bool looks_json = text.find_first_not_of(" \t\r\n") != std::string::npos &&
                            text[text.find_first_not_of(" \t\r\n")] == '{';
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        kv = detail::parse_json_config(text, path);
    else if (path.size() >= 5 && path.substr(path.size() - 5) == ".toml")
        kv = detail::parse_toml_config(text, path);
    else
        kv = looks_json ? detail::parse_json_config(text, path)
                        : detail::parse_toml_config(text, path);

    LineDescription line;
    line.n0 = detail::require_int(kv, "n0", path);
    line.n1 = detail::require_int(kv, "n1", path);
    line.n2 = detail::require_int(kv, "n2", path);
    if (line.n0 < 1) throw ConfigError(path + ": n0 must be >= 1");
    if (line.n1 < 2) throw ConfigError(path + ": n1 must be >= 2");
    if (line.n2 < 2) throw ConfigError(path + ": n2 must be >= 2");

    for (int u = 0; u < 3; ++u) {
        const int n_u = line.part_size(u);
        bool has_t = false, has_r = false;
        std::vector<double> t = detail::part_array(kv, "t_lower", u, n_u, path, &has_t);
        std::vector<double> r = detail::part_array(kv, "r_lower", u, n_u, path, &has_r);
        std::vector<double> s, w, g;
        if (has_t) {
            s = detail::part_array(kv, "s_lower", u, n_u, path);
            if (s.empty()) throw ConfigError(path + ": part " + std::to_string(u) +
                                             ": t_lower without s_lower");
        } else if (has_r) {
            w = detail::part_array(kv, "w_lower", u, n_u, path);
            g = detail::part_array(kv, "g_lower", u, n_u, path);
            if (w.empty() || g.empty())
                throw ConfigError(path + ": part " + std::to_string(u) +
                                  ": r_lower needs w_lower and g_lower");
        } else {
            throw ConfigError(path + ": part " + std::to_string(u) +
                              ": provide t_lower" + std::to_string(u) + "/s_lower" +
                              std::to_string(u) + " or r_lower/w_lower/g_lower");
        }
        line.seg[u].resize(static_cast<size_t>(n_u));
        for (int j = 0; j < n_u; ++j) {
            SegmentParams p;
            if (has_t) {
                p.t_lower = t[static_cast<size_t>(j)];
                p.s_lower = s[static_cast<size_t>(j)];
            } else {
                p.t_lower = r[static_cast<size_t>(j)] + w[static_cast<size_t>(j)];
                p.s_lower = g[static_cast<size_t>(j)] - r[static_cast<size_t>(j)];
            }
            line.seg[u][static_cast<size_t>(j)] = p;
        }

        bool has_b = false;
        std::vector<double> b = detail::part_array(kv, "b", u, n_u, path, &has_b);
        if (has_b) {
            line.occ[u].resize(static_cast<size_t>(n_u));
            for (int j = 0; j < n_u; ++j) {
                double x = b[static_cast<size_t>(j)];
                if (x != 0.0 && x != 1.0)
                    throw ConfigError(path + ": b" + std::to_string(u) + " entries must be 0 or 1");
                line.occ[u][static_cast<size_t>(j)] = static_cast<int>(x);
            }
        } else if (kv.count("m" + std::to_string(u))) {
            int m_u = detail::require_int(kv, "m" + std::to_string(u), path);
            if (m_u < 0 || m_u > n_u)
                throw ConfigError(path + ": m" + std::to_string(u) + " out of range 0.." +
                                  std::to_string(n_u));
            line.occ[u] = spread_occupancy(n_u, m_u);
        } else {
            throw ConfigError(path + ": part " + std::to_string(u) + ": provide b" +
                              std::to_string(u) + " or m" + std::to_string(u));
        }
    }
    return line;
}

} // namespace maxline
