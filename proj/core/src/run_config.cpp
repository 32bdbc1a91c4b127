#include "logwave/run_config.hpp"

#include "logwave/csv.hpp"
#include "logwave/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace logwave::run {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

} // namespace

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

KeyValueConfig KeyValueConfig::parse_text(const std::string& text) {
    KeyValueConfig kv;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw DomainError("config line " + std::to_string(line_no) +
                              ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw DomainError("config line " + std::to_string(line_no) + ": empty key");
        kv.values_[key] = value;
    }
    return kv;
}

void KeyValueConfig::apply_override(const std::string& kev) {
    const std::size_t eq = kev.find('=');
    if (eq == std::string::npos)
        throw DomainError("--set expects KEY=VALUE, got '" + kev + "'");
    values_[trim(kev.substr(0, eq))] = trim(kev.substr(eq + 1));
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
    values_[key] = value;
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
    used_.insert(key);
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
    used_.insert(key);
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing text");
        return v;
    } catch (const std::exception&) {
        throw DomainError("config key '" + key + "': cannot parse '" + it->second +
                          "' as a number");
    }
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
    used_.insert(key);
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        std::size_t pos = 0;
        const int v = std::stoi(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing text");
        return v;
    } catch (const std::exception&) {
        throw DomainError("config key '" + key + "': cannot parse '" + it->second +
                          "' as an integer");
    }
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
    used_.insert(key);
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::string v = it->second;
    std::transform(v.begin(), v.end(), v.begin(), ::tolower);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw DomainError("config key '" + key + "': cannot parse '" + it->second +
                      "' as a boolean");
}

std::vector<double> KeyValueConfig::get_list(const std::string& key) const {
    used_.insert(key);
    auto it = values_.find(key);
    std::vector<double> out;
    if (it == values_.end()) return out;
    std::istringstream in(it->second);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw DomainError("config key '" + key + "': cannot parse list entry '" + tok +
                              "'");
        }
    }
    return out;
}

std::vector<std::string> KeyValueConfig::unused_keys() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : values_)
        if (!used_.count(k)) out.push_back(k);
    return out;
}

RunConfig RunConfig::from(const KeyValueConfig& kv) {
    RunConfig c;
    c.kind = kv.get_string("kind", "ode");
    c.params.p = kv.get_double("p", c.params.p);
    c.params.a = kv.get_double("a", c.params.a);
    c.params.N = kv.get_int("N", c.params.N);

    c.init_kind = kv.get_string("init.kind", c.init_kind);
    c.init_A = kv.get_double("init.A", c.init_A);
    c.init_B = kv.get_double("init.B", c.init_B);
    c.bump_amplitude = kv.get_double("init.amplitude", c.bump_amplitude);
    c.bump_width = kv.get_double("init.width", c.bump_width);
    c.bump_center = kv.get_double("init.center", c.bump_center);
    c.init_file = kv.get_string("init.file", c.init_file);

    c.x_min = kv.get_double("grid.x_min", c.x_min);
    c.x_max = kv.get_double("grid.x_max", c.x_max);
    c.n_cells = kv.get_int("grid.n_cells", c.n_cells);
    c.boundary = kv.get_string("grid.boundary", c.boundary);

    c.cfl = kv.get_double("solver.cfl", c.cfl);
    c.cap_safety = kv.get_double("solver.cap_safety", c.cap_safety);
    c.threshold = kv.get_double("solver.threshold", c.threshold);
    c.max_time = kv.get_double("solver.max_time", c.max_time);
    c.window_min = kv.get_double("solver.window_min", c.window_min);
    c.window_max = kv.get_double("solver.window_max", c.window_max);
    c.snapshot_ratio = kv.get_double("solver.snapshot_ratio", c.snapshot_ratio);

    c.ode_A = kv.get_double("ode.A", c.ode_A);
    c.ode_B = kv.get_double("ode.B", c.ode_B);
    c.ode_stop = kv.get_double("ode.stop_value", c.ode_stop);
    c.ode_rel_tol = kv.get_double("ode.rel_tol", c.ode_rel_tol);
    c.fit_lo = kv.get_double("ode.fit_lo", c.fit_lo);
    c.fit_hi = kv.get_double("ode.fit_hi", c.fit_hi);

    c.x0 = kv.get_double("sim.x0", c.x0);
    c.ds = kv.get_double("sim.ds", c.ds);
    c.quad_n = kv.get_int("sim.quad_n", c.quad_n);
    c.theta = kv.get_double("sim.theta", c.theta);
    c.m = kv.get_double("sim.m", c.m);
    c.sigma = kv.get_double("sim.sigma", c.sigma);
    c.burn_in = kv.get_string("sim.burn_in", c.burn_in);
    c.res_factor = kv.get_double("sim.res_factor", c.res_factor);
    c.sim_span = kv.get_double("sim.span", c.sim_span);
    c.slack = kv.get_double("sim.slack", c.slack);

    c.sweep_p = kv.get_list("sweep.p");
    c.sweep_a = kv.get_list("sweep.a");

    c.out_dir = kv.get_string("out.dir", c.out_dir);
    c.timestamp_subdir = kv.get_bool("out.timestamp_subdir", c.timestamp_subdir);
    c.write_snapshots = kv.get_bool("out.write_snapshots", c.write_snapshots);

    const auto unused = kv.unused_keys();
    if (!unused.empty())
        throw DomainError("config key '" + unused.front() + "': unknown key");
    return c;
}

KeyValueConfig RunConfig::echo() const {
    KeyValueConfig kv;
    auto d = [](double v) { return csv::format(v); };
    kv.set("kind", kind);
    kv.set("p", d(params.p));
    kv.set("a", d(params.a));
    kv.set("N", std::to_string(params.N));
    kv.set("init.kind", init_kind);
    kv.set("init.A", d(init_A));
    kv.set("init.B", d(init_B));
    kv.set("init.amplitude", d(bump_amplitude));
    kv.set("init.width", d(bump_width));
    kv.set("init.center", d(bump_center));
    if (!init_file.empty()) kv.set("init.file", init_file);
    kv.set("grid.x_min", d(x_min));
    kv.set("grid.x_max", d(x_max));
    kv.set("grid.n_cells", std::to_string(n_cells));
    kv.set("grid.boundary", boundary);
    kv.set("solver.cfl", d(cfl));
    kv.set("solver.cap_safety", d(cap_safety));
    kv.set("solver.threshold", d(threshold));
    kv.set("solver.max_time", d(max_time));
    kv.set("solver.window_min", d(window_min));
    kv.set("solver.window_max", d(window_max));
    kv.set("solver.snapshot_ratio", d(snapshot_ratio));
    kv.set("ode.A", d(ode_A));
    kv.set("ode.B", d(ode_B));
    kv.set("ode.stop_value", d(ode_stop));
    kv.set("ode.rel_tol", d(ode_rel_tol));
    kv.set("ode.fit_lo", d(fit_lo));
    kv.set("ode.fit_hi", d(fit_hi));
    kv.set("sim.x0", d(x0));
    kv.set("sim.ds", d(ds));
    kv.set("sim.quad_n", std::to_string(quad_n));
    kv.set("sim.theta", d(theta));
    kv.set("sim.m", d(m));
    kv.set("sim.sigma", d(sigma));
    kv.set("sim.burn_in", burn_in);
    kv.set("sim.res_factor", d(res_factor));
    kv.set("sim.span", d(sim_span));
    kv.set("sim.slack", d(slack));
    if (!sweep_p.empty() || !sweep_a.empty()) {
        auto join = [&](const std::vector<double>& v) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) s += ",";
                s += d(v[i]);
            }
            return s;
        };
        kv.set("sweep.p", join(sweep_p));
        kv.set("sweep.a", join(sweep_a));
    }
    kv.set("out.dir", out_dir);
    kv.set("out.timestamp_subdir", timestamp_subdir ? "true" : "false");
    kv.set("out.write_snapshots", write_snapshots ? "true" : "false");
    return kv;
}

void RunConfig::validate() const {
    static const std::set<std::string> kinds{"ode", "pde", "similarity", "rates", "sweep"};
    if (!kinds.count(kind))
        throw DomainError("config key 'kind': '" + kind +
                          "' is not one of ode|pde|similarity|rates|sweep");
    if (kind != "sweep") params.validate();
    if (kind == "pde" || kind == "similarity" || kind == "rates") {
        if (params.N >= 2)
            throw DomainError("config key 'N': the finite-difference solver is 1D only");
        if (init_kind != "constant" && init_kind != "bump" && init_kind != "file")
            throw DomainError("config key 'init.kind': must be constant|bump|file");
        if (boundary != "outflow" && boundary != "periodic")
            throw DomainError("config key 'grid.boundary': must be outflow|periodic");
        if (!(cfl > 0 && cfl < 1))
            throw DomainError("config key 'solver.cfl': must lie in (0,1)");
    }
    if (kind == "sweep" && (sweep_p.empty() != sweep_a.empty()))
        throw DomainError("config key 'sweep.p'/'sweep.a': both lists must be given");
}

} // namespace logwave::run
