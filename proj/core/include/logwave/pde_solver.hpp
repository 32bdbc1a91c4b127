#pragma once

#include "logwave/params.hpp"

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace logwave::pde {

enum class Boundary { Periodic, Outflow };

/// Uniform 1D grid. For Outflow runs the caller must leave a margin larger
/// than the light cone of the run (finite speed of propagation keeps the
/// window uncontaminated); run_to_blowup enforces margin >= max_time.
struct Grid1D {
    double x_min = -1.0;
    double x_max = 1.0;
    int n_cells = 100;
    Boundary boundary = Boundary::Outflow;

    double dx() const { return (x_max - x_min) / n_cells; }
    int n_nodes() const { return boundary == Boundary::Periodic ? n_cells : n_cells + 1; }
    double x(int i) const { return x_min + dx() * i; }
    void validate() const;
};

struct WaveState {
    double t = 0.0;
    std::vector<double> u;
    std::vector<double> u_t;
    double dt_current = 0.0;
    std::vector<std::uint8_t> frozen; ///< nodes past threshold, out of the stencil
};

/// Thrown when a step produces a non-finite value; carries the last finite state.
class BlowupPassedError : public std::runtime_error {
public:
    BlowupPassedError(const std::string& what, WaveState state)
        : std::runtime_error(what), last_state(std::move(state)) {}
    WaveState last_state;
};

struct StopPolicy {
    double threshold = 1e8;      ///< per-node blow-up level
    double max_time = 1.0;       ///< give-up time for globally existing solutions
    double window_min = 0.0;     ///< nodes in [window_min, window_max] must blow up
    double window_max = 0.0;
    double cfl = 0.9;
    double cap_safety = 0.005;   ///< dt <= cap_safety * sqrt(u/f(u)) at the largest node
    std::vector<double> snapshot_times; ///< exact capture times (sorted ascending)
    double snapshot_ratio = 0.0; ///< geometric cadence in estimated (T-t); 0 disables
    std::size_t max_steps = 50'000'000;
};

struct TimeSample {
    double t, u, u_t;
};

struct PointwiseT {
    double T = std::numeric_limits<double>::quiet_NaN();
    double uncertainty = std::numeric_limits<double>::quiet_NaN();
    bool ok = false;
};

struct BlowupCurve {
    std::vector<double> x;
    std::vector<double> T_of_x; ///< NaN at nodes that never blew up
    std::vector<double> delta0; ///< filled by check_geometry
    std::vector<std::uint8_t> non_characteristic;
    double lipschitz_max_slope = 0.0;
};

struct RunResult {
    std::vector<WaveState> snapshots;
    BlowupCurve curve;
    bool blowup_detected = false;
    std::string outcome; ///< "blow-up" or "no-blow-up-detected"
};

/// One Stormer-Verlet step of u_tt = u_xx + f(u) with
/// dt = min(cfl dx, cap_safety sqrt(umax/f(umax)), dt_limit).
/// Frozen nodes keep their values; their neighbors use one-sided stencils.
WaveState step(const WaveState& state, const Grid1D& grid, const Params& prm,
               double cfl, double cap_safety = 0.005,
               double dt_limit = std::numeric_limits<double>::infinity(),
               double freeze_threshold = std::numeric_limits<double>::infinity());

/// March to blow-up of every window node (or to max_time). Snapshots are taken
/// at policy.snapshot_times exactly (dt is clamped to land on them) and/or at
/// the geometric cadence. The curve holds the per-node tail-fit blow-up times.
RunResult run_to_blowup(const WaveState& initial, const Grid1D& grid,
                        const Params& prm, const StopPolicy& policy);

/// Blow-up time of a single node from its late-time history: for each sample
/// in the last decade of growth, T_j = t_j + tail(|u_j|, u_t_j^2 - 2F(u_j));
/// returns the median and the sample spread. Fails on non-monotone tails.
PointwiseT estimate_pointwise_T(const std::vector<TimeSample>& history, const Params& prm,
                                double threshold = 1e8);

struct GeometryReport {
    bool lipschitz_ok = false;
    double max_slope = 0.0;
    std::vector<double> delta0;
};

/// Secant-slope cone check over the defined window:
/// delta0(x0) = 1 - max_{x != x0} |T(x)-T(x0)|/|x-x0|, clamped to [0, 1-tol];
/// nodes with delta0 >= flag_level are marked non-characteristic.
/// Also verifies |dT/dx| <= 1 + tol between adjacent nodes.
GeometryReport check_geometry(BlowupCurve& curve, const Grid1D& grid,
                              double tol = 0.05, double flag_level = 0.05);

/// Discrete field energy sum( u_t^2/2 + (D+ u)^2/2 ) dx (diagnostic).
double field_energy(const WaveState& state, const Grid1D& grid);

/// CSV export: snapshot columns x,u,u_t; curve columns x,T,delta0,flag.
void write_snapshot_csv(const WaveState& state, const Grid1D& grid, const std::string& path);
void write_curve_csv(const BlowupCurve& curve, const std::string& path);

} // namespace logwave::pde
