#include "wavefem/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "wavefem/expression.hpp"

namespace wavefem {

namespace {

struct Entry {
    std::string value;
    int line = 0;
};

const char* kKnownKeys[] = {"domain", "nx",    "ny",   "alpha_kind", "alpha_value", "alpha_expr",
                            "beta",   "semilinear", "forcing", "u0", "u1", "utt0",
                            "k",      "T",     "startup", "fit_window", "outputs"};

bool known_key(const std::string& key) {
    for (const char* k : kKnownKeys)
        if (key == k) return true;
    return false;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) a++;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) b--;
    return s.substr(a, b - a);
}

[[noreturn]] void fail_at(const std::string& src, int line, const std::string& msg) {
    throw std::invalid_argument(src + ":" + std::to_string(line) + ": " + msg);
}

[[noreturn]] void fail(const std::string& src, const std::string& msg) {
    throw std::invalid_argument(src + ": " + msg);
}

Expression parse_value_expr(const std::string& src, const Entry& e, const std::string& key) {
    try {
        return parse_expression(e.value);
    } catch (const std::invalid_argument& err) {
        fail_at(src, e.line, "in value for key '" + key + "': " + err.what());
    }
}

double const_value(const std::string& src, const Entry& e, const std::string& key) {
    Expression ex = parse_value_expr(src, e, key);
    if (ex.uses_t() || ex.uses_xy())
        fail_at(src, e.line, "value for key '" + key + "' must be a constant expression");
    const double v = ex.eval(0.0, 0.0, 0.0);
    if (!std::isfinite(v)) fail_at(src, e.line, "value for key '" + key + "' is not finite");
    return v;
}

int int_value(const std::string& src, const Entry& e, const std::string& key) {
    const std::string v = trim(e.value);
    int out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        fail_at(src, e.line, "value for key '" + key + "' must be an integer");
    return out;
}

bool bool_value(const std::string& src, const Entry& e, const std::string& key) {
    const std::string v = trim(e.value);
    if (v == "true") return true;
    if (v == "false") return false;
    fail_at(src, e.line, "value for key '" + key + "' must be true or false");
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = s.find(',', start);
        if (comma == std::string::npos) {
            parts.push_back(trim(s.substr(start)));
            return parts;
        }
        parts.push_back(trim(s.substr(start, comma - start)));
        start = comma + 1;
    }
}

/// Spatial slot: expression in x, y only.
SpatialFn spatial_fn(const std::string& src, const Entry& e, const std::string& key) {
    Expression ex = parse_value_expr(src, e, key);
    if (ex.uses_t()) fail_at(src, e.line, "value for key '" + key + "' must not reference t");
    return [ex](double x, double y) { return ex.eval(x, y, 0.0); };
}

}  // namespace

RunSpec parse_config_text(const std::string& text, const std::string& source_name) {
    const std::string& src = source_name;

    std::map<std::string, Entry> entries;
    {
        std::istringstream in(text);
        std::string raw;
        int line = 0;
        while (std::getline(in, raw)) {
            line++;
            const std::size_t hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            const std::string stripped = trim(raw);
            if (stripped.empty()) continue;

            const std::size_t eq = stripped.find('=');
            if (eq == std::string::npos) fail_at(src, line, "expected 'key = value'");
            const std::string key = trim(stripped.substr(0, eq));
            const std::string value = trim(stripped.substr(eq + 1));
            if (key.empty()) fail_at(src, line, "missing key before '='");
            if (!known_key(key)) fail_at(src, line, "unknown key '" + key + "'");
            if (value.empty()) fail_at(src, line, "empty value for key '" + key + "'");

            auto [it, inserted] = entries.insert({key, Entry{value, line}});
            if (!inserted)
                fail_at(src, line,
                        "duplicate key '" + key + "' (first defined at line " +
                            std::to_string(it->second.line) + ")");
        }
    }

    for (const char* req : {"nx", "ny", "alpha_kind", "u0", "u1", "k", "T"})
        if (entries.find(req) == entries.end())
            fail(src, std::string("missing required key '") + req + "'");

    RunSpec spec;
    spec.name = src;
    SimConfig& sim = spec.sim;

    if (auto it = entries.find("domain"); it != entries.end()) {
        const std::vector<std::string> parts = split_commas(it->second.value);
        if (parts.size() != 4)
            fail_at(src, it->second.line, "key 'domain' needs four values x0,x1,y0,y1");
        double v[4];
        for (int i = 0; i < 4; ++i)
            v[i] = const_value(src, Entry{parts[i], it->second.line}, "domain");
        if (!(v[0] < v[1]) || !(v[2] < v[3]))
            fail_at(src, it->second.line, "key 'domain' needs x0 < x1 and y0 < y1");
        sim.x0 = v[0];
        sim.x1 = v[1];
        sim.y0 = v[2];
        sim.y1 = v[3];
    }

    sim.nx = int_value(src, entries.at("nx"), "nx");
    sim.ny = int_value(src, entries.at("ny"), "ny");
    if (sim.nx < 1 || sim.ny < 1) fail(src, "nx and ny must be at least 1");

    {
        const Entry& kind = entries.at("alpha_kind");
        const std::string kind_v = trim(kind.value);
        const auto value_it = entries.find("alpha_value");
        const auto expr_it = entries.find("alpha_expr");
        if (kind_v == "constant") {
            if (value_it == entries.end())
                fail_at(src, kind.line, "alpha_kind = constant requires key 'alpha_value'");
            if (expr_it != entries.end())
                fail_at(src, expr_it->second.line,
                        "alpha_expr conflicts with alpha_kind = constant");
            const double alpha = const_value(src, value_it->second, "alpha_value");
            if (alpha < 0.0)
                fail_at(src, value_it->second.line, "alpha_value must be nonnegative");
            sim.damping = CoefficientField::constant(alpha);
        } else if (kind_v == "spatial") {
            if (expr_it == entries.end())
                fail_at(src, kind.line, "alpha_kind = spatial requires key 'alpha_expr'");
            if (value_it != entries.end())
                fail_at(src, value_it->second.line,
                        "alpha_value conflicts with alpha_kind = spatial");
            Expression ex = parse_value_expr(src, expr_it->second, "alpha_expr");
            if (ex.uses_t())
                fail_at(src, expr_it->second.line, "alpha_expr must not reference t");
            sim.damping =
                CoefficientField::function([ex](double x, double y) { return ex.eval(x, y, 0.0); });
        } else {
            fail_at(src, kind.line, "alpha_kind must be constant or spatial");
        }
    }

    if (auto it = entries.find("beta"); it != entries.end()) {
        sim.beta = const_value(src, it->second, "beta");
        if (sim.beta < 0.0) fail_at(src, it->second.line, "beta must be nonnegative");
    }

    if (auto it = entries.find("semilinear"); it != entries.end())
        sim.semilinear = bool_value(src, it->second, "semilinear");

    if (auto it = entries.find("forcing"); it != entries.end()) {
        Expression ex = parse_value_expr(src, it->second, "forcing");
        sim.forcing = [ex](double x, double y, double t) { return ex.eval(x, y, t); };
    }

    sim.u0 = spatial_fn(src, entries.at("u0"), "u0");
    sim.u1 = spatial_fn(src, entries.at("u1"), "u1");
    if (auto it = entries.find("utt0"); it != entries.end())
        sim.utt0 = spatial_fn(src, it->second, "utt0");

    {
        const Entry& e = entries.at("k");
        if (trim(e.value) == "auto") {
            sim.k = 0.0;  // run() derives h^2
        } else {
            sim.k = const_value(src, e, "k");
            if (!(sim.k > 0.0)) fail_at(src, e.line, "k must be positive (or auto)");
        }
    }

    {
        const Entry& e = entries.at("T");
        sim.T = const_value(src, e, "T");
        if (!(sim.T > 0.0)) fail_at(src, e.line, "T must be positive");
    }

    if (auto it = entries.find("startup"); it != entries.end()) {
        try {
            sim.startup = parse_startup(trim(it->second.value));
        } catch (const std::invalid_argument& err) {
            fail_at(src, it->second.line, err.what());
        }
    }

    if (auto it = entries.find("fit_window"); it != entries.end()) {
        const std::vector<std::string> parts = split_commas(it->second.value);
        if (parts.size() != 2)
            fail_at(src, it->second.line, "key 'fit_window' needs two values lo,hi");
        const double lo = const_value(src, Entry{parts[0], it->second.line}, "fit_window");
        const double hi = const_value(src, Entry{parts[1], it->second.line}, "fit_window");
        if (!(lo >= 0.0) || !(lo < hi))
            fail_at(src, it->second.line, "fit_window needs 0 <= lo < hi");
        spec.fit_lo = lo;
        spec.fit_hi = hi;
    }

    if (auto it = entries.find("outputs"); it != entries.end()) {
        spec.outputs_explicit = true;
        spec.want_table = spec.want_decay = spec.want_summary = false;
        for (const std::string& part : split_commas(it->second.value)) {
            if (part == "table") spec.want_table = true;
            else if (part == "decay") spec.want_decay = true;
            else if (part == "summary") spec.want_summary = true;
            else fail_at(src, it->second.line, "unknown output '" + part + "'");
        }
    }

    return spec;
}

RunSpec parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();

    std::string stem = path;
    const std::size_t slash = stem.find_last_of("/\\");
    if (slash != std::string::npos) stem.erase(0, slash + 1);
    const std::size_t dot = stem.find_last_of('.');
    if (dot != std::string::npos && dot > 0) stem.erase(dot);

    RunSpec spec = parse_config_text(buf.str(), stem);
    spec.name = stem;
    return spec;
}

}  // namespace wavefem
