#pragma once

#include "logwave/params.hpp"
#include "logwave/pde_solver.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace logwave::rate {

/// Per-snapshot ratios of the two-sided rate bound: each entry is the
/// bracketed cone-norm quantity divided by the profile psi_T.
struct RatePoint {
    double t;
    double s;        ///< -log(T - t)
    double ratio_u;  ///< ||u||_{L2(I)} / (sqrt(T-t) psi_T(t))
    double ratio_ut; ///< (T-t) ||u_t||_{L2(I)} / (sqrt(T-t) psi_T(t))
    double ratio_ux; ///< (T-t) ||u_x||_{L2(I)} / (sqrt(T-t) psi_T(t))
};

struct RateSeries {
    std::vector<RatePoint> points;
    double x0 = 0.0;
    double T = 0.0;
    double t_start = 0.0;
};

/// Cone-restricted L2 norms by composite Simpson on interior grid nodes with
/// trapezoid end-cells up to the exact cone endpoints (constant fields
/// integrate exactly). Snapshots outside 0 < T - t < 1 are skipped.
RateSeries theorem2_ratios(const std::vector<pde::WaveState>& snapshots,
                           const pde::Grid1D& grid, double x0, double T,
                           const Params& prm);

struct GrowthFit {
    double q_fit;        ///< log-log slope of the windowed space-time integral
    double q_fit_halfwidth;
    double q1_fit;       ///< log-log slope of ||w||_{H1} + ||ds w||_{L2} + sup|w|
    double q1_fit_halfwidth;
};

/// Log-log least-squares slopes against s. window_series holds
/// (s, int_s^{s+1} int (w^2 + w_s^2 + w_y^2) dy dtau); norm_series holds
/// (s, ||w||_{H1} + ||ds w||_{L2}, sup|w|).
GrowthFit growth_monitor(const std::vector<std::pair<double, double>>& window_series,
                         const std::vector<std::array<double, 3>>& norm_series);

/// CSV columns t,s,ratio_u,ratio_ut,ratio_ux.
void write_rates_csv(const RateSeries& series, const std::string& path);

} // namespace logwave::rate
