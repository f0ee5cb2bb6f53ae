#include "wlab/config.hpp"

#include <cstdlib>
#include <fstream>

#include "wlab/errors.hpp"

namespace wlab::cli {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\'')))
        return s.substr(1, s.size() - 2);
    return s;
}

} // namespace

void KeyValues::load_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw BadInput("cannot open config file: " + path);
    std::string line;
    while (std::getline(is, line)) parse_line(line);
    section_.clear();
}

void KeyValues::parse_line(const std::string& raw_line) {
    std::string line = raw_line;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) return;
    if (line.front() == '[') {
        if (line.back() != ']') throw BadInput("malformed section header: " + line);
        section_ = trim(line.substr(1, line.size() - 2));
        return;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw BadInput("malformed config line: " + line);
    std::string key = trim(line.substr(0, eq));
    const std::string value = unquote(trim(line.substr(eq + 1)));
    if (!section_.empty()) key = section_ + "." + key;
    values_[key] = value;
}

void KeyValues::set(const std::string& dotted_key, const std::string& value) {
    values_[dotted_key] = unquote(trim(value));
}

std::string KeyValues::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double KeyValues::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    char* end = nullptr;
    const double v = std::strtod(it->second.c_str(), &end);
    if (end == it->second.c_str()) throw BadInput("not a number: " + key);
    return v;
}

int KeyValues::get_int(const std::string& key, int fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    return static_cast<int>(std::strtol(it->second.c_str(), nullptr, 10));
}

bool KeyValues::get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second == "true") return true;
    if (it->second == "false") return false;
    throw BadInput("not a boolean: " + key);
}

RunConfig RunConfig::from(const KeyValues& kv) {
    RunConfig c;
    c.surface = kv.get_string("surface.name", c.surface);
    c.outdir = kv.get_string("output.dir", c.outdir);
    c.mesh_nu = kv.get_int("grid.nu", c.mesh_nu);
    c.mesh_nv = kv.get_int("grid.nv", c.mesh_nv);
    c.line_n = kv.get_int("grid.line_n", c.line_n);
    c.grid_n = kv.get_int("grid.n", c.grid_n);
    c.flow_T = kv.get_double("flow.T", c.flow_T);
    c.flow_dt = kv.get_double("flow.dt", c.flow_dt);
    c.seed = static_cast<unsigned>(kv.get_int("run.seed", static_cast<int>(c.seed)));
    c.tol_period = kv.get_double("tolerances.period", c.tol_period);
    c.tol_flux = kv.get_double("tolerances.flux", c.tol_flux);
    c.tol_shiffman = kv.get_double("tolerances.shiffman", c.tol_shiffman);
    c.tol_superharmonic = kv.get_double("tolerances.superharmonic", c.tol_superharmonic);
    c.tol_conservation = kv.get_double("tolerances.conservation", c.tol_conservation);
    c.tol_monotone = kv.get_double("tolerances.monotone", c.tol_monotone);
    c.tol_shape = kv.get_double("tolerances.shape", c.tol_shape);
    c.tol_drift = kv.get_double("tolerances.drift", c.tol_drift);
    c.dump_lines = kv.get_bool("output.dump_lines", c.dump_lines);
    // spectral grids must stay powers of two
    for (int n : {c.line_n}) {
        if (n < 2 || (n & (n - 1)) != 0)
            throw BadInput("grid.line_n must be a power of two");
    }
    if (!(c.tol_period > 0.0) || !(c.tol_flux > 0.0) || !(c.tol_shiffman > 0.0) ||
        !(c.tol_superharmonic > 0.0) || !(c.tol_conservation > 0.0) ||
        !(c.tol_monotone > 0.0))
        throw BadInput("tolerances must be positive");
    return c;
}

} // namespace wlab::cli
