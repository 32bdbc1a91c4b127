#pragma once

#include "logwave/params.hpp"

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace logwave::ode {

struct OdeSample {
    double t;
    double v;
    double v_prime;
    double energy_residual; ///< |(v')^2 - 2F(v) - C| / max(1, (v')^2)
    /// T - t by backward accumulation of phase-plane segments. The time
    /// variable itself saturates at T - ulp once the gap passes ~1e-16 T,
    /// so anything needing -log(T-t) deep must use this field, not T - t.
    double remaining = std::numeric_limits<double>::quiet_NaN();
};

/// Adaptive trajectory of v'' = f(v) from (A, B) into the singular regime.
/// Samples are stored at geometrically spaced v levels (every factor 2),
/// plus the initial and final accepted states.
struct OdeTrajectory {
    std::vector<OdeSample> samples;
    double energy_constant = 0.0;  ///< C = B^2 - 2F(A)
    double energy_tolerance = 0.0; ///< max residual seen over accepted steps
    double T_estimate = 0.0;
    Params params;
    double stop_value = 0.0;
    double rel_tol = 0.0;
};

/// Integrate v'' = f(v), v(0)=A>0, v'(0)=B>0 until v >= stop_value with an
/// embedded Dormand-Prince 5(4) pair, step ceiling h <= 0.05 v/v'.
/// The first integral (v')^2 - 2F(v) = C is audited at every accepted step;
/// drift beyond 100x rel_tol raises IntegrationError with the last good state.
/// T_estimate is filled from estimate_blowup_time when stop_value >= 1e8.
OdeTrajectory integrate(double A, double B, const Params& prm,
                        double stop_value, double rel_tol);

/// T = t_last + int_{v_last}^inf du / sqrt(2F(u) + C), the tail evaluated by
/// the substitution u = v_last * zeta^{-m} with adaptive quadrature and the
/// large-argument expansion of F. sample_index < 0 means the last sample.
double estimate_blowup_time(const OdeTrajectory& traj, int sample_index = -1);

/// Time left to blow-up from (v, v') with (v')^2 = 2F(v) + C, i.e.
/// int_v^inf du / sqrt(2F(u) + C). Requires 2F(v) + C > 0 and v > 0.
double tail_time(double v, double C, const Params& prm);

struct RatioPoint {
    double log_gap; ///< -log(T - t)
    double ratio;   ///< v(t) / psi_T(t)
};

/// Per-sample profile ratios v/psi_T restricted to T - t < e^{-1}.
std::vector<RatioPoint> profile_ratio(const OdeTrajectory& traj, double T);

struct ExponentFit {
    double power_exp;   ///< beta, expected 2/(p-1)
    double log_exp;     ///< lambda, expected a/(p-1)
    double intercept;
    std::size_t n_used;
};

/// Least-squares fit log v = -beta log(T-t) - lambda log(-log(T-t)) + c over
/// samples with log_gap in [window_lo, window_hi]. The omitted O(log s / s)
/// corrections bias lambda like log(s)/s, so deep windows recover the
/// exponents far better than shallow ones.
ExponentFit fit_exponents(const OdeTrajectory& traj, double T,
                          double window_lo = 10.0, double window_hi = 25.0);

/// Write samples as CSV with columns t,v,v_prime,energy_residual.
void write_trajectory_csv(const OdeTrajectory& traj, const std::string& path);

} // namespace logwave::ode
