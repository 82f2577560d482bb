#include "nodalsl/config.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "nodalsl/nodes_io.hpp"

namespace nodalsl {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
        return s.substr(1, s.size() - 2);
    return s;
}

double parse_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const std::string t = trim(v);
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    if (ec != std::errc{} || p != t.data() + t.size())
        throw ConfigError("malformed number '" + v + "'", key);
    return out;
}

long parse_int(const std::string& key, const std::string& v) {
    long out = 0;
    const std::string t = trim(v);
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    if (ec != std::errc{} || p != t.data() + t.size())
        throw ConfigError("malformed integer '" + v + "'", key);
    return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
    const std::string t = trim(v);
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    throw ConfigError("malformed boolean '" + v + "'", key);
}

BoundaryParam parse_boundary(const std::string& key, const std::string& v) {
    const std::string t = trim(v);
    if (t == "inf" || t == "Inf" || t == "+inf" || t == "infinity")
        return BoundaryParam::dirichlet();
    return BoundaryParam::finite(parse_double(key, t));
}

std::vector<int> parse_index_list(const std::string& key, const std::string& v) {
    std::vector<int> out;
    std::string item;
    std::istringstream in(v);
    while (std::getline(in, item, ',')) {
        std::istringstream ws(item);
        std::string tok;
        while (ws >> tok) out.push_back(static_cast<int>(parse_int(key, tok)));
    }
    if (out.empty()) throw ConfigError("empty index list", key);
    return out;
}

std::vector<int> parse_index_range(const std::string& key, const std::string& v) {
    const auto dots = v.find("..");
    if (dots == std::string::npos)
        throw ConfigError("range must look like 'first..last'", key);
    const long a = parse_int(key, v.substr(0, dots));
    const long b = parse_int(key, v.substr(dots + 2));
    if (b < a) throw ConfigError("empty range '" + v + "'", key);
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(b - a + 1));
    for (long n = a; n <= b; ++n) out.push_back(static_cast<int>(n));
    return out;
}

}  // namespace

Potential potential_from_config(const std::string& q_text, const std::string& base_dir) {
    const std::string t = trim(unquote(trim(q_text)));
    if (t.rfind("file:", 0) == 0) {
        std::filesystem::path p = t.substr(5);
        if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
        const auto table = read_xy_csv(p.string());
        std::vector<double> values;
        values.reserve(table.size());
        double prev_x = -1.0;
        for (const auto& [x, q] : table) {
            if (x <= prev_x) throw ConfigError("potential samples must have increasing x", "q");
            prev_x = x;
            values.push_back(q);
        }
        return Potential::samples(std::move(values));
    }
    try {
        return Potential::expression(t);
    } catch (const expr::ParseError& e) {
        throw ConfigError(e.what(), "q");
    }
}

ProblemSpec ProblemConfig::to_problem() const {
    Potential q = potential_from_config(q_text, base_dir);
    try {
        return ProblemSpec::make(q, h, H, gamma0, gamma1, xi0, xi1);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

ProblemConfig parse_config_text(const std::string& text, const std::string& base_dir) {
    ProblemConfig cfg;
    cfg.base_dir = base_dir;

    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + " is not 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("missing key on line " + std::to_string(lineno));
        kv[key] = value;
    }

    bool have_list = false, have_range = false;
    for (const auto& [key, value] : kv) {
        if (key == "q") cfg.q_text = unquote(value);
        else if (key == "h") cfg.h = parse_boundary(key, value);
        else if (key == "H") cfg.H = parse_boundary(key, value);
        else if (key == "gamma0") cfg.gamma0 = parse_double(key, value);
        else if (key == "gamma1") cfg.gamma1 = parse_double(key, value);
        else if (key == "xi0") {
            try { cfg.xi0 = parse_rational(value); }
            catch (const Error& e) { throw ConfigError(e.what(), "xi0"); }
        } else if (key == "xi1") {
            try { cfg.xi1 = parse_rational(value); }
            catch (const Error& e) { throw ConfigError(e.what(), "xi1"); }
        } else if (key == "n_list") {
            cfg.n_list = parse_index_list(key, value);
            have_list = true;
        } else if (key == "n_range") {
            cfg.n_list = parse_index_range(key, value);
            have_range = true;
        } else if (key == "n_min") {
            cfg.solver.n_min = static_cast<int>(parse_int(key, value));
        } else if (key == "tolerances.root") {
            cfg.solver.root_rtol = parse_double(key, value);
        } else if (key == "tolerances.node") {
            cfg.solver.node_tol = parse_double(key, value);
        } else if (key == "tolerances.wronskian") {
            cfg.solver.step.wronskian_tol = parse_double(key, value);
        } else if (key == "tolerances.h_max") {
            cfg.solver.step.h_max = parse_double(key, value);
        } else if (key == "tolerances.osc_c") {
            cfg.solver.step.osc_c = parse_double(key, value);
        } else if (key == "smoothing.window") {
            cfg.smoothing.window = static_cast<int>(parse_int(key, value));
        } else if (key == "smoothing.degree") {
            cfg.smoothing.degree = static_cast<int>(parse_int(key, value));
        } else if (key == "smoothing.richardson") {
            cfg.smoothing.richardson = parse_bool(key, value);
        } else if (key == "grid.points") {
            cfg.grid_points = static_cast<int>(parse_int(key, value));
        } else if (key == "roundtrip.max_q_sup_error") {
            cfg.rt_max_q_sup_error = parse_double(key, value);
        } else if (key == "roundtrip.max_constant_error") {
            cfg.rt_max_constant_error = parse_double(key, value);
        } else if (key == "roundtrip.require_decreasing") {
            cfg.rt_require_decreasing = parse_bool(key, value);
        } else {
            throw ConfigError("unknown key", key);
        }
    }
    if (have_list && have_range)
        throw ConfigError("give n_list or n_range, not both", "n_list");

    if (cfg.solver.n_min < 1) throw ConfigError("n_min must be >= 1", "n_min");
    if (cfg.smoothing.window < 2) throw ConfigError("window must be >= 2", "smoothing.window");
    if (cfg.smoothing.degree < 1) throw ConfigError("degree must be >= 1", "smoothing.degree");
    if (cfg.grid_points < 3 || cfg.grid_points % 2 == 0)
        throw ConfigError("grid.points must be odd and >= 3", "grid.points");
    return cfg;
}

ProblemConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(),
                             std::filesystem::path(path).parent_path().string());
}

}  // namespace nodalsl
