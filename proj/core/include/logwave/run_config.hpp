#pragma once

#include "logwave/params.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace logwave::run {

/// Flat key = value config text (# comments, blank lines ignored), plus
/// repeatable KEY=VALUE overrides. Keys are tracked so typos are reported.
class KeyValueConfig {
public:
    static KeyValueConfig parse_file(const std::string& path);
    static KeyValueConfig parse_text(const std::string& text);

    void apply_override(const std::string& key_equals_value);
    void set(const std::string& key, const std::string& value);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_list(const std::string& key) const; ///< comma-separated

    /// Keys never read by any accessor; used to reject typos.
    std::vector<std::string> unused_keys() const;
    const std::map<std::string, std::string>& items() const { return values_; }

private:
    std::map<std::string, std::string> values_;
    mutable std::set<std::string> used_;
};

/// Fully resolved experiment description.
struct RunConfig {
    std::string kind; ///< ode | pde | similarity | rates | sweep
    Params params;

    // initial data
    std::string init_kind = "constant"; ///< constant | bump | file
    double init_A = 1.0, init_B = 1.0;  ///< constant data u = A, u_t = B
    double bump_amplitude = 3.0, bump_width = 1.0, bump_center = 0.0;
    std::string init_file;

    // grid
    double x_min = -2.0, x_max = 2.0;
    int n_cells = 4000;
    std::string boundary = "outflow";

    // solver policy
    double cfl = 0.45;
    double cap_safety = 0.005;
    double threshold = 1e8;
    double max_time = 1.0;
    double window_min = -0.25, window_max = 0.25;
    double snapshot_ratio = 0.0;

    // ode experiment
    double ode_A = 1.0, ode_B = 1.0;
    double ode_stop = 1e12;
    double ode_rel_tol = 1e-11;
    double fit_lo = 10.0, fit_hi = 25.0;

    // similarity / rates
    double x0 = 0.0;
    double ds = 0.1;
    int quad_n = 64;
    double theta = 10.0, m = 20.0, sigma = 1.0;
    std::string burn_in = "auto"; ///< "auto" or a number
    double res_factor = 8.0;      ///< cone radius must cover >= res_factor dx
    double sim_span = 3.2;        ///< s-units required beyond burn-in
    double slack = 1e-3;

    // sweep grid
    std::vector<double> sweep_p, sweep_a;

    // output
    std::string out_dir = "runs";
    bool timestamp_subdir = true;
    bool write_snapshots = true;

    static RunConfig from(const KeyValueConfig& kv);
    /// Every field as flat text, idempotent under parse -> from -> echo.
    KeyValueConfig echo() const;
    void validate() const;
};

} // namespace logwave::run
