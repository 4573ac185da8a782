#pragma once

#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "brushlab/common.hpp"

namespace brushlab {

// Flat key = value configuration. Lines starting with '#' and blank lines are
// ignored; unknown keys for a given subcommand are rejected outright.
struct ExperimentConfig {
    std::map<std::string, std::string> kv;
    std::string raw;

    bool has(const std::string& key) const { return kv.count(key) != 0; }

    const std::string& get(const std::string& key) const {
        auto it = kv.find(key);
        if (it == kv.end()) throw config_error("config: missing key '" + key + "'");
        return it->second;
    }

    std::string get_or(const std::string& key, const std::string& dflt) const {
        auto it = kv.find(key);
        return it == kv.end() ? dflt : it->second;
    }

    int get_int(const std::string& key) const {
        try {
            std::size_t pos = 0;
            const int v = std::stoi(get(key), &pos);
            if (pos != get(key).size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw config_error("config: key '" + key + "' is not an integer");
        }
    }

    int get_int_or(const std::string& key, int dflt) const {
        return has(key) ? get_int(key) : dflt;
    }

    double get_double(const std::string& key) const {
        const std::string& s = get(key);
        if (s == "inf") return kInf;
        try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw config_error("config: key '" + key + "' is not a number");
        }
    }

    double get_double_or(const std::string& key, double dflt) const {
        return has(key) ? get_double(key) : dflt;
    }

    std::vector<double> get_doubles(const std::string& key) const {
        std::vector<double> out;
        std::stringstream ss(get(key));
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item == "inf") {
                out.push_back(kInf);
                continue;
            }
            try {
                std::size_t pos = 0;
                out.push_back(std::stod(item, &pos));
                if (pos != item.size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw config_error("config: key '" + key + "' has a malformed list entry");
            }
        }
        if (out.empty()) throw config_error("config: key '" + key + "' is an empty list");
        return out;
    }

    std::vector<int> get_ints(const std::string& key) const {
        std::vector<int> out;
        for (double v : get_doubles(key)) {
            const int i = static_cast<int>(v);
            if (static_cast<double>(i) != v)
                throw config_error("config: key '" + key + "' must list integers");
            out.push_back(i);
        }
        return out;
    }

    std::uint64_t get_seed() const {
        return static_cast<std::uint64_t>(get_int_or("seed", 1));
    }
};

inline ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    cfg.raw = text;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config: line " + std::to_string(lineno) + " is not key = value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw config_error("config: empty key on line " + std::to_string(lineno));
        if (cfg.kv.count(key))
            throw config_error("config: duplicate key '" + key + "'");
        cfg.kv[key] = val;
    }
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

// Rejects any key outside the subcommand's schema.
inline void reject_unknown_keys(const ExperimentConfig& cfg, const std::set<std::string>& allowed) {
    for (const auto& [key, val] : cfg.kv)
        if (!allowed.count(key)) throw config_error("config: unknown key '" + key + "'");
}

// Thread count: BRUSHLAB_THREADS overrides the config value.
inline int resolve_threads(const ExperimentConfig& cfg) {
    if (const char* env = std::getenv("BRUSHLAB_THREADS")) {
        try {
            return std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            throw config_error("BRUSHLAB_THREADS is not an integer");
        }
    }
    return std::max(1, cfg.get_int_or("threads", 1));
}

}  // namespace brushlab
