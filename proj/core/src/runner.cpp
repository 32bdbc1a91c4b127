#include "logwave/runner.hpp"

#include "logwave/csv.hpp"
#include "logwave/errors.hpp"
#include "logwave/fitting.hpp"
#include "logwave/nonlinearity.hpp"
#include "logwave/ode_blowup.hpp"
#include "logwave/pde_solver.hpp"
#include "logwave/quadrature.hpp"
#include "logwave/rate_verifier.hpp"
#include "logwave/similarity.hpp"
#include "logwave/version.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <thread>

namespace logwave::run {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

fs::path prepare_out_dir(const RunConfig& cfg) {
    fs::path base(cfg.out_dir);
    if (!cfg.timestamp_subdir) {
        fs::create_directories(base);
        return base;
    }
    const std::time_t now = std::time(nullptr);
    std::tm tmv{};
    localtime_r(&now, &tmv);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y%m%d-%H%M%S", &tmv);
    fs::path dir = base / ("run-" + cfg.kind + "-" + buf);
    for (int k = 2; fs::exists(dir); ++k)
        dir = base / ("run-" + cfg.kind + "-" + std::string(buf) + "-" + std::to_string(k));
    fs::create_directories(dir);
    return dir;
}

void write_config_echo(const RunConfig& cfg, const fs::path& dir) {
    std::ofstream out(dir / "config.resolved");
    for (const auto& [k, v] : cfg.echo().items()) out << k << " = " << v << "\n";
}

json config_json(const RunConfig& cfg) {
    json j;
    for (const auto& [k, v] : cfg.echo().items()) j[k] = v;
    return j;
}

void write_manifest(const RunConfig& cfg, const fs::path& dir,
                    const std::vector<std::string>& outputs, double wall_s,
                    const json& extra = json::object()) {
    json j;
    j["tool"] = "logwave";
    j["version"] = kVersion;
    j["config"] = config_json(cfg);
    if (cfg.kind != "sweep") {
        const DerivedConstants dc = DerivedConstants::from(cfg.params);
        j["derived"] = {{"alpha", dc.alpha}, {"kappa_a", dc.kappa_a}, {"p_bar", dc.p_bar}};
    }
    j["outputs"] = outputs;
    j["wall_time_s"] = wall_s;
    for (const auto& [k, v] : extra.items()) j[k] = v;
    std::ofstream out(dir / "manifest.json");
    out << j.dump(2) << "\n";
}

void write_json(const json& j, const fs::path& path) {
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

pde::Grid1D make_grid(const RunConfig& cfg) {
    pde::Grid1D g;
    g.x_min = cfg.x_min;
    g.x_max = cfg.x_max;
    g.n_cells = cfg.n_cells;
    g.boundary = cfg.boundary == "periodic" ? pde::Boundary::Periodic
                                            : pde::Boundary::Outflow;
    g.validate();
    return g;
}

pde::StopPolicy make_policy(const RunConfig& cfg) {
    pde::StopPolicy p;
    p.threshold = cfg.threshold;
    p.max_time = cfg.max_time;
    p.window_min = cfg.window_min;
    p.window_max = cfg.window_max;
    p.cfl = cfg.cfl;
    p.cap_safety = cfg.cap_safety;
    p.snapshot_ratio = cfg.snapshot_ratio;
    return p;
}

pde::WaveState make_initial_state(const RunConfig& cfg, const pde::Grid1D& grid) {
    const int n = grid.n_nodes();
    pde::WaveState st;
    st.u.assign(n, 0.0);
    st.u_t.assign(n, 0.0);
    st.frozen.assign(n, 0);
    if (cfg.init_kind == "constant") {
        std::fill(st.u.begin(), st.u.end(), cfg.init_A);
        std::fill(st.u_t.begin(), st.u_t.end(), cfg.init_B);
    } else if (cfg.init_kind == "bump") {
        for (int i = 0; i < n; ++i) {
            const double r = (grid.x(i) - cfg.bump_center) / cfg.bump_width;
            st.u[i] = cfg.bump_amplitude * std::exp(-r * r);
        }
    } else if (cfg.init_kind == "file") {
        std::ifstream in(cfg.init_file);
        if (!in) throw DomainError("config key 'init.file': cannot open " + cfg.init_file);
        std::string line;
        std::getline(in, line); // header x,u,u_t
        int i = 0;
        while (std::getline(in, line) && i < n) {
            double x, u, ut;
            if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &u, &ut) != 3)
                throw DomainError("init.file: malformed row '" + line + "'");
            st.u[i] = u;
            st.u_t[i] = ut;
            ++i;
        }
        if (i != n)
            throw DomainError("init.file: expected " + std::to_string(n) + " rows");
    }
    return st;
}

struct PhaseA {
    pde::RunResult result;
    double T0 = 0.0;
    int node = -1;
};

// first pass: march to blow-up, extract T(x0) from the curve
PhaseA pde_phase_a(const RunConfig& cfg, const pde::Grid1D& grid,
                   const pde::StopPolicy& policy) {
    PhaseA out;
    out.result = pde::run_to_blowup(make_initial_state(cfg, grid), grid, cfg.params, policy);
    if (!out.result.blowup_detected)
        throw DomainError("phase-a: no blow-up detected inside the window");
    double best = 1e300;
    for (std::size_t k = 0; k < out.result.curve.x.size(); ++k) {
        const double d = std::abs(out.result.curve.x[k] - cfg.x0);
        if (d < best && !std::isnan(out.result.curve.T_of_x[k])) {
            best = d;
            out.node = static_cast<int>(k);
        }
    }
    if (out.node < 0) throw DomainError("phase-a: blow-up time undefined near x0");
    out.T0 = out.result.curve.T_of_x[out.node];
    return out;
}

struct SGrid {
    std::vector<double> s;
    std::vector<double> t;
};

SGrid make_s_grid(const RunConfig& cfg, double T0, double dx) {
    const double s_lo_raw = std::max(1.0, -std::log(T0) + 1e-6);
    const double s_res = -std::log(cfg.res_factor * dx);
    if (s_res <= s_lo_raw + 1.0)
        throw DomainError("s-grid: grid too coarse for any usable similarity window "
                          "(raise grid.n_cells or lower sim.res_factor)");
    SGrid g;
    // anchor the grid on integer multiples of ds so s+1 lookups stay exact
    const long k_lo = static_cast<long>(std::ceil(s_lo_raw / cfg.ds - 1e-9));
    for (long k = k_lo;; ++k) {
        const double s = k * cfg.ds;
        if (s > s_res + 1e-12) break;
        g.s.push_back(s);
        g.t.push_back(T0 - std::exp(-s));
    }
    if (g.s.size() < 4) throw DomainError("s-grid: too few similarity times");
    return g;
}

// second pass: deterministic re-run capturing snapshots at exact times
std::vector<pde::WaveState> pde_phase_b(const RunConfig& cfg, const pde::Grid1D& grid,
                                        const pde::StopPolicy& base_policy,
                                        const SGrid& sgrid) {
    pde::StopPolicy policy = base_policy;
    policy.snapshot_times = sgrid.t;
    policy.snapshot_ratio = 0.0;
    policy.max_time = sgrid.t.back() + 1e-12;
    const pde::RunResult res =
        pde::run_to_blowup(make_initial_state(cfg, grid), grid, cfg.params, policy);
    // keep exactly the requested times, in order
    std::vector<pde::WaveState> out;
    std::size_t j = 0;
    for (const auto& snap : res.snapshots) {
        if (j >= sgrid.t.size()) break;
        if (std::abs(snap.t - sgrid.t[j]) <= 1e-9 * std::max(1.0, std::abs(sgrid.t[j]))) {
            out.push_back(snap);
            ++j;
        }
    }
    if (out.size() != sgrid.t.size())
        throw DomainError("phase-b: missed " + std::to_string(sgrid.t.size() - out.size()) +
                          " snapshot times");
    return out;
}

double burn_in_value(const RunConfig& cfg, const std::vector<sim::FunctionalReport>& reports) {
    if (cfg.burn_in != "auto") {
        try {
            return std::stod(cfg.burn_in);
        } catch (const std::exception&) {
            throw DomainError("config key 'sim.burn_in': expected 'auto' or a number");
        }
    }
    const double kap = kappa(cfg.params);
    for (const auto& r : reports)
        if (r.sup_w < 10.0 * kap) return r.s + 2.0;
    throw DomainError("burn-in: sup|w| never dropped below 10 kappa_a");
}

// ---------------- per-kind pipelines ----------------

json run_ode_core(const RunConfig& cfg, const fs::path& dir,
                  std::vector<std::string>& outputs) {
    const ode::OdeTrajectory traj =
        ode::integrate(cfg.ode_A, cfg.ode_B, cfg.params, cfg.ode_stop, cfg.ode_rel_tol);
    ode::write_trajectory_csv(traj, (dir / "trajectory.csv").string());
    outputs.push_back("trajectory.csv");

    json verdict;
    verdict["T_estimate"] = traj.T_estimate;
    verdict["energy_constant"] = traj.energy_constant;
    verdict["energy_tolerance"] = traj.energy_tolerance;
    const double kap = kappa(cfg.params);
    verdict["kappa_a"] = kap;

    if (traj.T_estimate > 0.0) {
        const auto ratios = ode::profile_ratio(traj, traj.T_estimate);
        {
            csv::Writer w((dir / "ratio.csv").string(), {"log_gap", "ratio"});
            for (const auto& r : ratios) w.row({r.log_gap, r.ratio});
            outputs.push_back("ratio.csv");
        }
        if (!ratios.empty()) {
            verdict["deepest_log_gap"] = ratios.back().log_gap;
            verdict["deepest_ratio"] = ratios.back().ratio;
            verdict["deepest_ratio_rel_err"] = std::abs(ratios.back().ratio - kap) / kap;
        }
        try {
            const ode::ExponentFit fit =
                ode::fit_exponents(traj, traj.T_estimate, cfg.fit_lo, cfg.fit_hi);
            verdict["power_exp"] = fit.power_exp;
            verdict["log_exp"] = fit.log_exp;
            verdict["power_exp_expected"] = 2.0 / (cfg.params.p - 1.0);
            verdict["log_exp_expected"] = cfg.params.a / (cfg.params.p - 1.0);
        } catch (const DomainError& e) {
            verdict["fit_error"] = e.what();
        }
    }
    return verdict;
}

RunOutcome run_ode(const RunConfig& cfg, const fs::path& dir, double t0_wall) {
    std::vector<std::string> outputs;
    json verdict = run_ode_core(cfg, dir, outputs);
    write_json(verdict, dir / "verdict.json");
    outputs.push_back("verdict.json");
    const double wall = t0_wall;
    write_manifest(cfg, dir, outputs, wall);
    return {0, "ode run complete", dir.string()};
}

json curve_json(const pde::BlowupCurve& curve) {
    json j;
    j["x"] = curve.x;
    j["T"] = json::array();
    j["delta0"] = json::array();
    j["flag"] = json::array();
    for (std::size_t i = 0; i < curve.x.size(); ++i) {
        j["T"].push_back(std::isnan(curve.T_of_x[i]) ? json(nullptr)
                                                     : json(curve.T_of_x[i]));
        j["delta0"].push_back(std::isnan(curve.delta0[i]) ? json(nullptr)
                                                          : json(curve.delta0[i]));
        j["flag"].push_back(static_cast<int>(curve.non_characteristic[i]));
    }
    j["lipschitz_max_slope"] = curve.lipschitz_max_slope;
    return j;
}

RunOutcome run_pde(const RunConfig& cfg, const fs::path& dir, double wall0) {
    const pde::Grid1D grid = make_grid(cfg);
    pde::StopPolicy policy = make_policy(cfg);
    if (policy.snapshot_ratio == 0.0) policy.snapshot_ratio = 0.5;

    const pde::RunResult res =
        pde::run_to_blowup(make_initial_state(cfg, grid), grid, cfg.params, policy);

    std::vector<std::string> outputs;
    std::vector<double> snapshot_times;
    if (cfg.write_snapshots) {
        int k = 0;
        for (const auto& snap : res.snapshots) {
            char name[64];
            std::snprintf(name, sizeof name, "snapshot_%03d.csv", k++);
            pde::write_snapshot_csv(snap, grid, (dir / name).string());
            outputs.push_back(name);
        }
    }
    for (const auto& snap : res.snapshots) snapshot_times.push_back(snap.t);

    if (res.blowup_detected) {
        pde::write_curve_csv(res.curve, (dir / "curve.csv").string());
        outputs.push_back("curve.csv");
    }

    json verdict;
    verdict["outcome"] = res.outcome;
    if (res.blowup_detected) {
        double tmin = 1e300, tmax = -1e300;
        for (double T : res.curve.T_of_x) {
            if (std::isnan(T)) continue;
            tmin = std::min(tmin, T);
            tmax = std::max(tmax, T);
        }
        verdict["T_min"] = tmin;
        verdict["T_max"] = tmax;
        verdict["lipschitz_max_slope"] = res.curve.lipschitz_max_slope;
    }
    write_json(verdict, dir / "verdict.json");
    outputs.push_back("verdict.json");

    json extra;
    extra["snapshot_times"] = snapshot_times;
    if (res.blowup_detected) extra["curve"] = curve_json(res.curve);
    write_manifest(cfg, dir, outputs, wall0, extra);
    return {0, res.outcome, dir.string()};
}

RunOutcome run_similarity(const RunConfig& cfg, const fs::path& dir, double wall0) {
    const pde::Grid1D grid = make_grid(cfg);
    pde::StopPolicy policy = make_policy(cfg);
    // only T(x0) is needed; completing a wide window would drag the global
    // time step through every node's blow-up
    policy.window_min = cfg.x0 - 5.0 * grid.dx();
    policy.window_max = cfg.x0 + 5.0 * grid.dx();
    const PhaseA pa = pde_phase_a(cfg, grid, policy);
    const SGrid sgrid = make_s_grid(cfg, pa.T0, grid.dx());
    const std::vector<pde::WaveState> snaps = pde_phase_b(cfg, grid, policy, sgrid);

    const double alpha = cfg.params.alpha();
    const sim::JacobiQuadrature q_alpha = sim::build_quadrature(alpha, cfg.quad_n);
    const sim::JacobiQuadrature q_alpha_m1 = sim::build_quadrature(alpha - 1.0, cfg.quad_n);

    std::vector<sim::SimilaritySlice> slices;
    slices.reserve(snaps.size());
    for (const auto& snap : snaps)
        slices.push_back(sim::to_similarity(snap, grid, cfg.x0, pa.T0, cfg.params, q_alpha));

    const sim::FunctionalSettings settings{cfg.theta, cfg.m, cfg.sigma};
    std::vector<sim::FunctionalReport> reports;
    reports.reserve(slices.size());
    for (const auto& sl : slices)
        reports.push_back(sim::functional_report(sl, q_alpha, q_alpha_m1, settings));
    sim::write_report_csv(reports, (dir / "functionals.csv").string());

    // equation residual along the series (uniform ds)
    {
        csv::Writer w((dir / "residuals.csv").string(), {"s", "residual"});
        for (std::size_t k = 1; k + 1 < slices.size(); ++k)
            w.row({slices[k].s,
                   sim::residual_A(slices[k - 1], slices[k], slices[k + 1], q_alpha)});
    }

    const double burn = burn_in_value(cfg, reports);
    std::vector<sim::FunctionalReport> tail;
    for (const auto& r : reports)
        if (r.s >= burn - 1e-12) tail.push_back(r);
    const sim::MonotonicityVerdict verdict =
        sim::monotonicity_report(tail, cfg.params, cfg.slack);

    // sensitivity to doubling the free constants
    const sim::FunctionalSettings doubled{2 * cfg.theta, 2 * cfg.m, 2 * cfg.sigma};
    std::vector<sim::FunctionalReport> tail2;
    for (const auto& sl : slices) {
        if (sl.s < burn - 1e-12) continue;
        tail2.push_back(sim::functional_report(sl, q_alpha, q_alpha_m1, doubled));
    }
    const sim::MonotonicityVerdict verdict2 =
        sim::monotonicity_report(tail2, cfg.params, cfg.slack);

    json vj;
    vj["T0"] = pa.T0;
    vj["x0"] = cfg.x0;
    vj["burn_in"] = burn;
    vj["settings"] = {{"theta", cfg.theta}, {"m", cfg.m}, {"sigma", cfg.sigma}};
    auto verdict_json = [](const sim::MonotonicityVerdict& v) {
        json j;
        j["ok"] = v.ok;
        j["n_checks"] = v.n_checks;
        j["max_violation"] = v.max_violation;
        j["slack"] = v.slack;
        j["violations"] = json::array();
        for (const auto& viol : v.violations)
            j["violations"].push_back(
                {{"s", viol.s}, {"lhs", viol.lhs}, {"rhs", viol.rhs},
                 {"magnitude", viol.magnitude}});
        return j;
    };
    vj["monotonicity"] = verdict_json(verdict);
    vj["monotonicity_doubled_constants"] = verdict_json(verdict2);
    write_json(vj, dir / "verdict.json");

    write_manifest(cfg, dir, {"functionals.csv", "residuals.csv", "verdict.json"}, wall0,
                   json{{"T0", pa.T0}, {"burn_in", burn}});
    return {verdict.ok ? 0 : 1,
            verdict.ok ? "monotonicity certified" : "monotonicity violations found",
            dir.string()};
}

RunOutcome run_rates(const RunConfig& cfg, const fs::path& dir, double wall0) {
    const pde::Grid1D grid = make_grid(cfg);
    pde::StopPolicy policy = make_policy(cfg);
    policy.window_min = cfg.x0 - 5.0 * grid.dx();
    policy.window_max = cfg.x0 + 5.0 * grid.dx();
    const PhaseA pa = pde_phase_a(cfg, grid, policy);
    const SGrid sgrid = make_s_grid(cfg, pa.T0, grid.dx());
    const std::vector<pde::WaveState> snaps = pde_phase_b(cfg, grid, policy, sgrid);

    const rate::RateSeries series =
        rate::theorem2_ratios(snaps, grid, cfg.x0, pa.T0, cfg.params);
    rate::write_rates_csv(series, (dir / "rates.csv").string());

    json vj;
    vj["T0"] = pa.T0;
    auto summarize = [&](auto getter, const char* name) {
        std::vector<double> s_axis, logratio;
        double lo = 1e300, hi = -1e300;
        for (const auto& p : series.points) {
            const double r = getter(p);
            lo = std::min(lo, r);
            hi = std::max(hi, r);
            if (r > 0.0) {
                s_axis.push_back(p.s);
                logratio.push_back(std::log(r));
            }
        }
        json j;
        j["min"] = lo;
        j["max"] = hi;
        if (s_axis.size() >= 3) {
            const fit::SlopeFit f = fit::linear_fit(s_axis, logratio);
            j["drift_slope"] = f.slope;
            j["drift_slope_halfwidth"] = 2.0 * f.slope_stderr;
        }
        vj[name] = j;
    };
    summarize([](const rate::RatePoint& p) { return p.ratio_u; }, "ratio_u");
    summarize([](const rate::RatePoint& p) { return p.ratio_ut; }, "ratio_ut");
    summarize([](const rate::RatePoint& p) { return p.ratio_ux; }, "ratio_ux");
    if (!series.points.empty()) {
        vj["deepest_ratio_u"] = series.points.back().ratio_u;
        vj["sqrt2_kappa"] = std::sqrt(2.0) * kappa(cfg.params);
    }

    // polynomial growth monitors on unweighted similarity norms
    try {
        const sim::JacobiQuadrature legendre = sim::build_quadrature(0.0, cfg.quad_n);
        std::vector<std::array<double, 3>> norm_series;
        std::vector<double> sq_sum(sgrid.s.size());
        for (std::size_t k = 0; k < snaps.size(); ++k) {
            const sim::SimilaritySlice sl =
                sim::to_similarity(snaps[k], grid, cfg.x0, pa.T0, cfg.params, legendre);
            const sim::SliceNorms nm = sim::slice_norms(sl, legendre);
            norm_series.push_back({sgrid.s[k], nm.h1 + nm.l2_ws, nm.sup_w});
            sq_sum[k] = nm.l2_w * nm.l2_w + nm.l2_ws * nm.l2_ws + nm.l2_wy * nm.l2_wy;
        }
        const auto K = static_cast<std::size_t>(std::llround(1.0 / cfg.ds));
        std::vector<std::pair<double, double>> window_series;
        if (K >= 1 && std::abs(K * cfg.ds - 1.0) < 1e-9) {
            for (std::size_t k = 0; k + K < sq_sum.size(); ++k) {
                double I = 0.0;
                for (std::size_t j = k; j < k + K; ++j)
                    I += 0.5 * (sq_sum[j] + sq_sum[j + 1]) * cfg.ds;
                window_series.push_back({sgrid.s[k], I});
            }
        }
        const rate::GrowthFit gf = rate::growth_monitor(window_series, norm_series);
        vj["q_fit"] = gf.q_fit;
        vj["q_fit_halfwidth"] = gf.q_fit_halfwidth;
        vj["q1_fit"] = gf.q1_fit;
        vj["q1_fit_halfwidth"] = gf.q1_fit_halfwidth;
    } catch (const DomainError& e) {
        vj["growth_monitor_error"] = e.what();
    }

    write_json(vj, dir / "verdict.json");
    write_manifest(cfg, dir, {"rates.csv", "verdict.json"}, wall0, json{{"T0", pa.T0}});
    return {0, "rate series complete", dir.string()};
}

} // namespace

RunOutcome run(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.kind == "sweep") return sweep(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    const fs::path dir = prepare_out_dir(cfg);
    write_config_echo(cfg, dir);
    auto wall = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    try {
        if (cfg.kind == "ode") return run_ode(cfg, dir, wall());
        if (cfg.kind == "pde") return run_pde(cfg, dir, wall());
        if (cfg.kind == "similarity") return run_similarity(cfg, dir, wall());
        if (cfg.kind == "rates") return run_rates(cfg, dir, wall());
    } catch (const std::exception& e) {
        return {2, cfg.kind + ": " + e.what(), dir.string()};
    }
    return {2, "unknown kind " + cfg.kind, dir.string()};
}

RunOutcome sweep(const RunConfig& cfg, int jobs) {
    cfg.validate();
    const auto t_start = std::chrono::steady_clock::now();
    const fs::path dir = prepare_out_dir(cfg);
    write_config_echo(cfg, dir);

    struct Cell {
        double p, a;
        std::string status;
        std::string message;
        double T_estimate = 0, beta = 0, lambda = 0, kappa_a = 0, ratio_rel_err = 0;
    };
    std::vector<Cell> cells;
    for (double p : cfg.sweep_p)
        for (double a : cfg.sweep_a) cells.push_back({p, a, "", "", 0, 0, 0, 0, 0});

    const int n_workers =
        jobs > 0 ? jobs
                 : std::max(1u, std::min(std::thread::hardware_concurrency(),
                                         static_cast<unsigned>(cells.size() ? cells.size() : 1)));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            Cell& c = cells[i];
            Params prm{c.p, c.a, cfg.params.N};
            if (!prm.valid()) {
                c.status = "invalid-params";
                c.message = "p,a outside the admissible range";
                continue;
            }
            try {
                const ode::OdeTrajectory traj =
                    ode::integrate(cfg.ode_A, cfg.ode_B, prm, cfg.ode_stop, cfg.ode_rel_tol);
                c.T_estimate = traj.T_estimate;
                c.kappa_a = kappa(prm);
                const auto ratios = ode::profile_ratio(traj, traj.T_estimate);
                if (!ratios.empty())
                    c.ratio_rel_err = std::abs(ratios.back().ratio - c.kappa_a) / c.kappa_a;
                const ode::ExponentFit fit =
                    ode::fit_exponents(traj, traj.T_estimate, cfg.fit_lo, cfg.fit_hi);
                c.beta = fit.power_exp;
                c.lambda = fit.log_exp;
                c.status = "ok";
            } catch (const std::exception& e) {
                c.status = "failed";
                c.message = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int k = 0; k < n_workers; ++k) pool.emplace_back(work);
    for (auto& th : pool) th.join();

    {
        csv::Writer w((dir / "table.csv").string(),
                      {"p", "a", "status", "T_estimate", "beta", "lambda", "beta_expected",
                       "lambda_expected", "kappa_a", "ratio_rel_err", "message"});
        for (const auto& c : cells) {
            const bool ok = c.status == "ok";
            w.raw_row({csv::format(c.p), csv::format(c.a), c.status,
                       ok ? csv::format(c.T_estimate) : "",
                       ok ? csv::format(c.beta) : "", ok ? csv::format(c.lambda) : "",
                       csv::format(2.0 / (c.p - 1.0)), csv::format(c.a / (c.p - 1.0)),
                       ok ? csv::format(c.kappa_a) : "",
                       ok ? csv::format(c.ratio_rel_err) : "", c.message});
        }
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    write_manifest(cfg, dir, {"table.csv"}, wall,
                   json{{"n_cells", cells.size()}, {"jobs", n_workers}});
    return {0, "sweep complete (" + std::to_string(cells.size()) + " cells)", dir.string()};
}

} // namespace logwave::run
