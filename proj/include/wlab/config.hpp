#ifndef WLAB_CONFIG_HPP
#define WLAB_CONFIG_HPP

#include <map>
#include <string>

namespace wlab::cli {

// Flat TOML subset: [section] headers, key = value scalars (strings,
// numbers, booleans), # comments. Keys are stored as "section.key".
class KeyValues {
public:
    void load_file(const std::string& path);
    void parse_line(const std::string& line);
    void set(const std::string& dotted_key, const std::string& value);

    bool has(const std::string& key) const { return values_.count(key) > 0; }
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    const std::map<std::string, std::string>& raw() const { return values_; }

private:
    std::map<std::string, std::string> values_;
    std::string section_;
};

struct RunConfig {
    std::string surface = "catenoid";
    std::string outdir = ".";
    int mesh_nu = 65;
    int mesh_nv = 65;
    int line_n = 256;
    int grid_n = 65;
    double flow_T = 0.05;
    double flow_dt = 2.5e-5;
    unsigned seed = 12345;
    // tolerances; every CLI check reads from here, nothing hard-coded
    double tol_period = 1e-8;
    double tol_flux = 1e-8;
    double tol_shiffman = 1e-7;
    double tol_superharmonic = 1e-6;
    double tol_conservation = 1e-5;
    double tol_monotone = 1e-6;
    double tol_shape = 1e-4;
    double tol_drift = 1e-6;
    bool dump_lines = false;

    static RunConfig from(const KeyValues& kv);
};

} // namespace wlab::cli

#endif
