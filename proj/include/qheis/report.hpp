#pragma once

// Run configuration and machine-readable reports for the CLI and the
// verification suites.

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

#include "qheis/grid.hpp"

namespace qheis {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

struct RunConfig {
    GridSpec grid{4.0, 8, 8.0, 8};
    int fock_degree = 8;
    std::uint64_t seed = 2024;
    double tol_scale = 1.0;
    int oversample = 4;
    int rho_nodes = 32;
    int gh_nodes = 20;
    std::string out_path;

    void validate() const {
        grid.validate();
        if (fock_degree < 0 || fock_degree > 16) throw ConfigError("fock_degree out of range");
        if (!(tol_scale > 0)) throw ConfigError("tol_scale must be positive");
        if (oversample < 1 || oversample > 8) throw ConfigError("oversample out of range");
        if (rho_nodes < 4) throw ConfigError("rho_nodes too small");
        if (gh_nodes < 4 || gh_nodes > 48) throw ConfigError("gh_nodes out of range");
    }

    static RunConfig from_json(const nlohmann::json& j) {
        RunConfig c;
        if (j.contains("grid")) {
            const auto& g = j["grid"];
            if (g.contains("n_x")) c.grid.n_x = g["n_x"];
            if (g.contains("n_t")) c.grid.n_t = g["n_t"];
            if (g.contains("half_extent_x")) c.grid.half_extent_x = g["half_extent_x"];
            if (g.contains("half_extent_t")) c.grid.half_extent_t = g["half_extent_t"];
        }
        if (j.contains("fock_degree")) c.fock_degree = j["fock_degree"];
        if (j.contains("seed")) c.seed = j["seed"];
        if (j.contains("tol_scale")) c.tol_scale = j["tol_scale"];
        if (j.contains("oversample")) c.oversample = j["oversample"];
        if (j.contains("rho_nodes")) c.rho_nodes = j["rho_nodes"];
        if (j.contains("gh_nodes")) c.gh_nodes = j["gh_nodes"];
        if (j.contains("out")) c.out_path = j["out"];
        return c;
    }

    nlohmann::json to_json() const {
        return {{"grid",
                 {{"n_x", grid.n_x},
                  {"half_extent_x", grid.half_extent_x},
                  {"n_t", grid.n_t},
                  {"half_extent_t", grid.half_extent_t}}},
                {"fock_degree", fock_degree},
                {"seed", seed},
                {"tol_scale", tol_scale},
                {"oversample", oversample},
                {"rho_nodes", rho_nodes},
                {"gh_nodes", gh_nodes},
                {"out", out_path}};
    }
};

struct CheckRecord {
    std::string name;
    std::string anchor; // stable identifier of the identity under test
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

inline std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 17);
    return std::string(buf, res.ptr);
}

struct Report {
    std::vector<CheckRecord> records;
    nlohmann::json config_echo;
    std::map<std::string, double> timings;

    bool all_pass() const {
        for (const auto& r : records)
            if (!r.pass) return false;
        return true;
    }

    // numeric fields serialized as fixed-format strings so identical runs
    // produce identical bytes
    nlohmann::json to_json() const {
        nlohmann::json j;
        j["config"] = config_echo;
        j["pass"] = all_pass();
        j["records"] = nlohmann::json::array();
        for (const auto& r : records)
            j["records"].push_back({{"name", r.name},
                                    {"anchor", r.anchor},
                                    {"measured", format_double(r.measured)},
                                    {"expected", format_double(r.expected)},
                                    {"tolerance", format_double(r.tolerance)},
                                    {"pass", r.pass}});
        nlohmann::json t;
        for (const auto& [k, v] : timings) t[k] = v;
        j["timings"] = t;
        return j;
    }

    std::string to_csv() const {
        std::ostringstream os;
        os << "name,anchor,measured,expected,tolerance,pass\n";
        for (const auto& r : records)
            os << r.name << ',' << r.anchor << ',' << format_double(r.measured) << ','
               << format_double(r.expected) << ',' << format_double(r.tolerance) << ','
               << (r.pass ? "1" : "0") << '\n';
        return os.str();
    }
};

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot write " + path);
    os << text;
}

} // namespace qheis
