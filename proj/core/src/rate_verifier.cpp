#include "logwave/rate_verifier.hpp"

#include "logwave/csv.hpp"
#include "logwave/errors.hpp"
#include "logwave/fitting.hpp"
#include "logwave/nonlinearity.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace logwave::rate {

namespace {

// integral of g^2 over [lo, hi]: Simpson over interior nodes, linear
// interpolation for the fractional end cells.
double l2sq_on_interval(const std::vector<double>& g, const pde::Grid1D& grid,
                        double lo, double hi) {
    const double dx = grid.dx();
    const int n = grid.n_nodes();
    auto sq = [&](int i) { return g[i] * g[i]; };

    int i_lo = static_cast<int>(std::ceil((lo - grid.x_min) / dx - 1e-12));
    int i_hi = static_cast<int>(std::floor((hi - grid.x_min) / dx + 1e-12));
    i_lo = std::max(i_lo, 0);
    i_hi = std::min(i_hi, n - 1);
    if (i_hi < i_lo) throw DomainError("theorem2_ratios: cone narrower than one cell");

    double acc = 0.0;
    // composite Simpson needs an odd node count; peel one trapezoid cell if even
    int j_hi = i_hi;
    if ((j_hi - i_lo) % 2 == 1 && j_hi > i_lo) {
        acc += 0.5 * (sq(j_hi - 1) + sq(j_hi)) * dx;
        --j_hi;
    }
    for (int i = i_lo; i + 2 <= j_hi; i += 2)
        acc += dx / 3.0 * (sq(i) + 4.0 * sq(i + 1) + sq(i + 2));

    // fractional end cells, integrand linearly interpolated
    auto frac = [&](int inner, double x_end, int outer) {
        const double x_inner = grid.x(inner);
        const double len = std::abs(x_end - x_inner);
        if (len <= 0.0 || outer < 0 || outer >= n) return 0.0;
        const double t = len / dx;
        const double g_end = (1.0 - t) * g[inner] + t * g[outer];
        return 0.5 * (sq(inner) + g_end * g_end) * len;
    };
    acc += frac(i_lo, lo, i_lo - 1);
    acc += frac(i_hi, hi, i_hi + 1);
    return acc;
}

} // namespace

RateSeries theorem2_ratios(const std::vector<pde::WaveState>& snapshots,
                           const pde::Grid1D& grid, double x0, double T,
                           const Params& prm) {
    prm.validate();
    grid.validate();
    RateSeries series;
    series.x0 = x0;
    series.T = T;
    series.t_start = snapshots.empty() ? 0.0 : snapshots.front().t;

    const int n = grid.n_nodes();
    const double dx = grid.dx();
    for (const auto& snap : snapshots) {
        const double tau = T - snap.t;
        if (!(tau > 0.0 && tau < 1.0)) continue;
        const double lo = x0 - tau, hi = x0 + tau;
        if (grid.boundary == pde::Boundary::Outflow && (lo < grid.x_min || hi > grid.x_max))
            throw DomainError("theorem2_ratios: cone exits the grid");

        std::vector<double> ux(n, 0.0);
        for (int i = 1; i + 1 < n; ++i) ux[i] = (snap.u[i + 1] - snap.u[i - 1]) / (2.0 * dx);
        if (grid.boundary == pde::Boundary::Periodic) {
            ux[0] = (snap.u[1] - snap.u[n - 1]) / (2.0 * dx);
            ux[n - 1] = (snap.u[0] - snap.u[n - 2]) / (2.0 * dx);
        } else {
            ux[0] = (snap.u[1] - snap.u[0]) / dx;
            ux[n - 1] = (snap.u[n - 1] - snap.u[n - 2]) / dx;
        }

        const double psi = psi_profile(T, snap.t, prm);
        const double denom = std::sqrt(tau) * psi;
        RatePoint pt;
        pt.t = snap.t;
        pt.s = -std::log(tau);
        pt.ratio_u = std::sqrt(l2sq_on_interval(snap.u, grid, lo, hi)) / denom;
        pt.ratio_ut = tau * std::sqrt(l2sq_on_interval(snap.u_t, grid, lo, hi)) / denom;
        pt.ratio_ux = tau * std::sqrt(l2sq_on_interval(ux, grid, lo, hi)) / denom;
        series.points.push_back(pt);
    }
    return series;
}

GrowthFit growth_monitor(const std::vector<std::pair<double, double>>& window_series,
                         const std::vector<std::array<double, 3>>& norm_series) {
    if (window_series.size() < 5 || norm_series.size() < 5)
        throw DomainError("growth_monitor: need >= 5 points past burn-in");
    const double span = norm_series.back()[0] - norm_series.front()[0];
    if (span < 5.0 - 1e-9)
        throw DomainError("growth_monitor: series must span >= 5 units of s");

    std::vector<double> lx, ly;
    for (const auto& [s, I] : window_series) {
        if (!(s > 0.0) || !(I > 0.0)) continue;
        lx.push_back(std::log(s));
        ly.push_back(std::log(I));
    }
    const fit::SlopeFit f0 = fit::linear_fit(lx, ly);

    lx.clear();
    ly.clear();
    for (const auto& rec : norm_series) {
        const double combined = rec[1] + rec[2];
        if (!(rec[0] > 0.0) || !(combined > 0.0)) continue;
        lx.push_back(std::log(rec[0]));
        ly.push_back(std::log(combined));
    }
    const fit::SlopeFit f1 = fit::linear_fit(lx, ly);

    return {f0.slope, 2.0 * f0.slope_stderr, f1.slope, 2.0 * f1.slope_stderr};
}

void write_rates_csv(const RateSeries& series, const std::string& path) {
    csv::Writer w(path, {"t", "s", "ratio_u", "ratio_ut", "ratio_ux"});
    for (const auto& p : series.points)
        w.row({p.t, p.s, p.ratio_u, p.ratio_ut, p.ratio_ux});
}

} // namespace logwave::rate
