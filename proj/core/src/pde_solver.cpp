#include "logwave/pde_solver.hpp"

#include "logwave/csv.hpp"
#include "logwave/errors.hpp"
#include "logwave/nonlinearity.hpp"
#include "logwave/ode_blowup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace logwave::pde {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

int wrap(int i, int n) { return ((i % n) + n) % n; }

// u_xx with central differences; one-sided O(dx^2) next to frozen nodes or
// outflow boundaries; zero when the stencil is exhausted (ODE-dominated).
struct Laplacian {
    const Grid1D& grid;
    const std::vector<std::uint8_t>& frozen;

    bool usable(int i) const {
        const int n = grid.n_nodes();
        if (grid.boundary == Boundary::Periodic) return !frozen[wrap(i, n)];
        return i >= 0 && i < n && !frozen[i];
    }
    double val(const std::vector<double>& u, int i) const {
        const int n = grid.n_nodes();
        return u[grid.boundary == Boundary::Periodic ? wrap(i, n) : i];
    }
    double operator()(const std::vector<double>& u, int i) const {
        const double dx2 = grid.dx() * grid.dx();
        const bool left = usable(i - 1), right = usable(i + 1);
        if (left && right) return (val(u, i - 1) - 2.0 * u[i] + val(u, i + 1)) / dx2;
        if (left && usable(i - 2) && usable(i - 3))
            return (2.0 * u[i] - 5.0 * val(u, i - 1) + 4.0 * val(u, i - 2) -
                    val(u, i - 3)) / dx2;
        if (right && usable(i + 2) && usable(i + 3))
            return (2.0 * u[i] - 5.0 * val(u, i + 1) + 4.0 * val(u, i + 2) -
                    val(u, i + 3)) / dx2;
        return 0.0;
    }
};

void acceleration(const std::vector<double>& u, const std::vector<std::uint8_t>& frozen,
                  const Grid1D& grid, const Params& prm, std::vector<double>& acc) {
    const int n = grid.n_nodes();
    acc.assign(n, 0.0);
    Laplacian lap{grid, frozen};
    for (int i = 0; i < n; ++i) {
        if (frozen[i]) continue;
        acc[i] = lap(u, i) + eval_f(u[i], prm);
    }
}

double active_umax(const WaveState& st) {
    double m = 0.0;
    for (std::size_t i = 0; i < st.u.size(); ++i)
        if (!st.frozen[i]) m = std::max(m, std::abs(st.u[i]));
    return m;
}

// remaining time to blow-up of the ODE v' = sqrt(2F(v)), leading order
double remaining_time_scale(double u, const Params& prm) {
    if (u <= 1.0) return std::numeric_limits<double>::infinity();
    const double tau = std::sqrt(u / eval_f(u, prm));
    return 2.0 / (prm.p - 1.0) * std::sqrt(0.5 * (prm.p + 1.0)) * tau;
}

} // namespace

void Grid1D::validate() const {
    if (!(x_max > x_min)) throw DomainError("Grid1D: x_max must exceed x_min");
    if (n_cells < 8) throw DomainError("Grid1D: need at least 8 cells");
}

WaveState step(const WaveState& state, const Grid1D& grid, const Params& prm,
               double cfl, double cap_safety, double dt_limit, double freeze_threshold) {
    grid.validate();
    prm.validate();
    if (!(cfl > 0.0 && cfl < 1.0)) throw DomainError("step: cfl must lie in (0,1)");
    const int n = grid.n_nodes();
    if (static_cast<int>(state.u.size()) != n || static_cast<int>(state.u_t.size()) != n)
        throw DomainError("step: state arrays do not match the grid");

    WaveState next = state;
    if (next.frozen.empty()) next.frozen.assign(n, 0);

    double dt = cfl * grid.dx();
    const double umax = active_umax(next);
    if (umax > 1.0) {
        const double cap = cap_safety * std::sqrt(umax / eval_f(umax, prm));
        dt = std::min(dt, cap);
    }
    dt = std::min(dt, dt_limit);
    if (!(dt > 0.0)) throw DomainError("step: nonpositive dt");

    static thread_local std::vector<double> acc0, acc1;
    acceleration(next.u, next.frozen, grid, prm, acc0);
    for (int i = 0; i < n; ++i) {
        if (next.frozen[i]) continue;
        next.u[i] = state.u[i] + dt * state.u_t[i] + 0.5 * dt * dt * acc0[i];
    }
    acceleration(next.u, next.frozen, grid, prm, acc1);
    for (int i = 0; i < n; ++i) {
        if (next.frozen[i]) continue;
        next.u_t[i] = state.u_t[i] + 0.5 * dt * (acc0[i] + acc1[i]);
    }
    next.t = state.t + dt;
    next.dt_current = dt;

    for (int i = 0; i < n; ++i) {
        if (!std::isfinite(next.u[i]) || !std::isfinite(next.u_t[i]))
            throw BlowupPassedError("step: non-finite value at node " + std::to_string(i),
                                    state);
        if (!next.frozen[i] && std::abs(next.u[i]) >= freeze_threshold) next.frozen[i] = 1;
    }
    return next;
}

RunResult run_to_blowup(const WaveState& initial, const Grid1D& grid,
                        const Params& prm, const StopPolicy& policy) {
    grid.validate();
    prm.validate();
    if (!(policy.window_min <= policy.window_max))
        throw DomainError("run_to_blowup: empty window");
    if (grid.boundary == Boundary::Outflow) {
        const double margin = std::min(policy.window_min - grid.x_min,
                                       grid.x_max - policy.window_max);
        if (margin < policy.max_time)
            throw DomainError("run_to_blowup: outflow margin smaller than the light cone "
                              "of max_time");
    }

    const int n = grid.n_nodes();
    WaveState st = initial;
    if (st.frozen.empty()) st.frozen.assign(n, 0);

    int iw0 = n, iw1 = -1;
    for (int i = 0; i < n; ++i) {
        const double x = grid.x(i);
        if (x >= policy.window_min && x <= policy.window_max) {
            iw0 = std::min(iw0, i);
            iw1 = std::max(iw1, i);
        }
    }
    if (iw1 < iw0) throw DomainError("run_to_blowup: window contains no grid node");

    std::vector<std::vector<TimeSample>> history(iw1 - iw0 + 1);
    std::vector<double> next_level(iw1 - iw0 + 1, policy.threshold * 1e-4);
    std::vector<std::uint8_t> recorded_freeze(iw1 - iw0 + 1, 0);
    auto record = [&](const WaveState& s) {
        for (int i = iw0; i <= iw1; ++i) {
            const int k = i - iw0;
            if (recorded_freeze[k]) continue;
            const double au = std::abs(s.u[i]);
            // level crossings, plus the freeze crossing itself (the only
            // sample guaranteed to sit at/above the threshold)
            if (au >= next_level[k] || s.frozen[i]) {
                history[k].push_back({s.t, s.u[i], s.u_t[i]});
                while (next_level[k] <= au) next_level[k] *= kSqrt2;
                if (s.frozen[i]) recorded_freeze[k] = 1;
            }
        }
    };

    RunResult result;
    result.snapshots.push_back(st);
    record(st);

    std::size_t snap_idx = 0;
    while (snap_idx < policy.snapshot_times.size() &&
           policy.snapshot_times[snap_idx] <= st.t)
        ++snap_idx;
    double last_remaining = remaining_time_scale(active_umax(st), prm);

    bool all_blown = false;
    for (std::size_t steps = 0; steps < policy.max_steps; ++steps) {
        all_blown = true;
        for (int i = iw0; i <= iw1; ++i)
            if (!st.frozen[i]) { all_blown = false; break; }
        if (all_blown) break;
        if (st.t >= policy.max_time) break;

        double dt_limit = policy.max_time - st.t;
        if (snap_idx < policy.snapshot_times.size())
            dt_limit = std::min(dt_limit, policy.snapshot_times[snap_idx] - st.t);
        if (!(dt_limit > 0.0)) dt_limit = 1e-300;

        st = step(st, grid, prm, policy.cfl, policy.cap_safety, dt_limit, policy.threshold);
        record(st);

        if (snap_idx < policy.snapshot_times.size()) {
            const double ts = policy.snapshot_times[snap_idx];
            if (st.t >= ts - 1e-12 * std::max(1.0, std::abs(ts))) {
                result.snapshots.push_back(st);
                ++snap_idx;
            }
        }
        if (policy.snapshot_ratio > 0.0 && policy.snapshot_ratio < 1.0) {
            const double rem = remaining_time_scale(active_umax(st), prm);
            if (rem <= policy.snapshot_ratio * last_remaining) {
                result.snapshots.push_back(st);
                last_remaining = rem;
            }
        }
        if (st.dt_current < 1e-15) break;
    }

    if (result.snapshots.back().t != st.t) result.snapshots.push_back(st);
    result.blowup_detected = all_blown;
    result.outcome = all_blown ? "blow-up" : "no-blow-up-detected";

    result.curve.x.resize(iw1 - iw0 + 1);
    result.curve.T_of_x.assign(iw1 - iw0 + 1, std::numeric_limits<double>::quiet_NaN());
    result.curve.delta0.assign(iw1 - iw0 + 1, std::numeric_limits<double>::quiet_NaN());
    result.curve.non_characteristic.assign(iw1 - iw0 + 1, 0);
    for (int i = iw0; i <= iw1; ++i) {
        const int k = i - iw0;
        result.curve.x[k] = grid.x(i);
        if (!st.frozen[i]) continue;
        const PointwiseT est = estimate_pointwise_T(history[k], prm, policy.threshold);
        if (est.ok) result.curve.T_of_x[k] = est.T;
    }
    if (all_blown) {
        GeometryReport geo = check_geometry(result.curve, grid);
        (void)geo;
    }
    return result;
}

namespace {

PointwiseT estimate_pointwiseT_impl(const std::vector<TimeSample>& history,
                                    const Params& prm, double threshold) {
    PointwiseT out;
    if (history.size() < 3) return out;
    double umax = 0.0;
    for (const auto& s : history) umax = std::max(umax, std::abs(s.u));
    if (umax < threshold * (1.0 - 1e-9)) return out;

    std::vector<double> estimates;
    double prev_au = 0.0;
    for (const auto& s : history) {
        const double au = std::abs(s.u);
        if (au < 0.1 * umax) continue; // last decade of growth only
        if (s.u * s.u_t <= 0.0 || au <= prev_au) return {}; // oscillatory tail
        prev_au = au;
        const double C = s.u_t * s.u_t - 2.0 * eval_F(au, prm, 1e-10);
        estimates.push_back(s.t + ode::tail_time(au, C, prm));
    }
    if (estimates.size() < 2) return out;
    std::vector<double> sorted = estimates;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];
    double spread = 0.0;
    for (double e : estimates) spread = std::max(spread, std::abs(e - median));
    out.T = median;
    out.uncertainty = spread;
    out.ok = true;
    return out;
}

} // namespace

PointwiseT estimate_pointwise_T(const std::vector<TimeSample>& history, const Params& prm,
                                double threshold) {
    prm.validate();
    return estimate_pointwiseT_impl(history, prm, threshold);
}

GeometryReport check_geometry(BlowupCurve& curve, const Grid1D& grid,
                              double tol, double flag_level) {
    const std::size_t n = curve.T_of_x.size();
    if (n != curve.x.size()) throw DomainError("check_geometry: ragged curve");

    // largest contiguous run of defined blow-up times
    std::size_t best_lo = 0, best_len = 0, lo = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        if (i == n || std::isnan(curve.T_of_x[i])) {
            if (i - lo > best_len) {
                best_len = i - lo;
                best_lo = lo;
            }
            lo = i + 1;
        }
    }
    if (best_len < 3) throw DomainError("check_geometry: no contiguous defined window");

    GeometryReport rep;
    rep.delta0.assign(n, std::numeric_limits<double>::quiet_NaN());
    const std::size_t hi = best_lo + best_len;
    double max_slope = 0.0;
    for (std::size_t i = best_lo + 1; i < hi; ++i)
        max_slope = std::max(max_slope, std::abs(curve.T_of_x[i] - curve.T_of_x[i - 1]) /
                                            grid.dx());
    for (std::size_t i = best_lo; i < hi; ++i) {
        double worst = 0.0;
        for (std::size_t j = best_lo; j < hi; ++j) {
            if (j == i) continue;
            worst = std::max(worst, std::abs(curve.T_of_x[j] - curve.T_of_x[i]) /
                                        std::abs(curve.x[j] - curve.x[i]));
        }
        rep.delta0[i] = std::clamp(1.0 - worst, 0.0, 1.0 - tol);
    }
    rep.max_slope = max_slope;
    rep.lipschitz_ok = max_slope <= 1.0 + tol;

    curve.delta0 = rep.delta0;
    curve.lipschitz_max_slope = max_slope;
    curve.non_characteristic.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isnan(rep.delta0[i]) && rep.delta0[i] >= flag_level)
            curve.non_characteristic[i] = 1;
    return rep;
}

double field_energy(const WaveState& state, const Grid1D& grid) {
    const int n = grid.n_nodes();
    const double dx = grid.dx();
    double e = 0.0;
    for (int i = 0; i < n; ++i) e += 0.5 * state.u_t[i] * state.u_t[i] * dx;
    const int nseg = grid.boundary == Boundary::Periodic ? n : n - 1;
    for (int i = 0; i < nseg; ++i) {
        const double du = state.u[wrap(i + 1, n)] - state.u[i];
        e += 0.5 * du * du / dx;
    }
    return e;
}

void write_snapshot_csv(const WaveState& state, const Grid1D& grid, const std::string& path) {
    csv::Writer w(path, {"x", "u", "u_t"});
    for (int i = 0; i < grid.n_nodes(); ++i)
        w.row({grid.x(i), state.u[i], state.u_t[i]});
}

void write_curve_csv(const BlowupCurve& curve, const std::string& path) {
    csv::Writer w(path, {"x", "T", "delta0", "flag"});
    for (std::size_t i = 0; i < curve.x.size(); ++i)
        w.row({curve.x[i], curve.T_of_x[i], curve.delta0[i],
               static_cast<double>(curve.non_characteristic[i])});
}

} // namespace logwave::pde
