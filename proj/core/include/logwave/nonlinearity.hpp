#pragma once

#include "logwave/params.hpp"

namespace logwave {

/// A positive quantity kept as log|value| so it survives arguments far
/// beyond double range. sign is +1 or -1; value() may overflow to inf.
struct LogValue {
    double log_abs = 0.0;
    double sign = 1.0;
    double value() const;
};

/// log(2 + u^2), switching to 2 log|u| + log1p(2/u^2) for large |u|.
double log_2_plus_sq(double u);
/// Same, from log|u| (u itself may be unrepresentable).
double log_2_plus_sq_from_log(double log_abs_u);

/// f(u) = |u|^{p-1} u log^a(2+u^2). Odd, finite for all representable
/// inputs whose image fits a double; overflow-safe via log-domain powering
/// above the crossover u^2 > 10^{300/p}.
double eval_f(double u, const Params& prm);

/// F(u) = int_0^u f(v) dv. Even and nonnegative. Exact closed form at a=0;
/// adaptive quadrature on [0,|u|] otherwise, and for |u| above 1e8 the
/// integration-by-parts series with the O(u^{-2}) remainder dropped.
double eval_F(double u, const Params& prm, double rel_tol = 1e-10);

/// F1(u) = -(2a/(p+1)^2) |u|^{p+1} log^{a-1}(2+u^2).
double eval_F1(double u, const Params& prm);

/// F2(u) = F(u) - u f(u)/(p+1) - F1(u), evaluated through the exact
/// double-integration-by-parts expansion
///   F2 = 4a(a-1)/(p+1)^2 G_{a-2} - 8a(a-1)/(p+1)^2 W_{a-2} + 4a/(p+1) W_{a-1},
/// G_b = int_0^x v^p log^b(2+v^2) dv, W_b = int_0^x v^p/(2+v^2) log^b(2+v^2) dv,
/// so the two leading orders never cancel in floating point.
double eval_F2(double u, const Params& prm, double rel_tol = 1e-10);

/// log F(x) for x given as log x (x may exceed double range).
double log_F_from_log(double log_x, const Params& prm, double rel_tol = 1e-12);

/// psi_T(t) = (T-t)^{-2/(p-1)} (-log(T-t))^{-a/(p-1)}. Requires 0 < T-t < 1.
double psi_profile(double T, double t, const Params& prm);
/// Same profile from the gap tau = T - t directly (no cancellation).
double psi_profile_tau(double tau, const Params& prm);
/// d/dt psi_T(t) = psi_T(t) e^s (2/(p-1) - a/((p-1)s)), s = -log(T-t).
double psi_profile_deriv(double T, double t, const Params& prm);

/// phi(s) = e^{2s/(p-1)} s^{-a/(p-1)}, returned in log form (s >= 1).
LogValue phi_of_s(double s, const Params& prm);
double log_phi(double s, const Params& prm);

/// gamma(s) = a(p+5)/((p-1)^2 s) - a(p+a-1)/((p-1)^2 s^2), s >= 1.
double gamma_of_s(double s, const Params& prm);

/// rho(y) = (1-y^2)^alpha on |y| < 1.
double rho_weight(double y, double alpha);

/// e^{-2ps/(p-1)} s^{a/(p-1)} f(phi(s) w); identically
/// s^{-a} |w|^{p-1} w log^a(2+phi^2 w^2), assembled in log space.
double scaled_f(double w, double s, const Params& prm);

/// e^{-2(p+1)s/(p-1)} s^{2a/(p-1)} F(phi(s) w), assembled in log space.
double scaled_F(double w, double s, const Params& prm, double rel_tol = 1e-10);

namespace detail {
/// Direct powering path of eval_f (valid below the overflow crossover).
double eval_f_direct(double u, const Params& prm);
/// Log-domain path of eval_f (valid for any representable u != 0).
double eval_f_logdomain(double u, const Params& prm);
/// IBP series sum_k c_k L^{-k}, c_0 = 1, c_{k+1} = c_k * (-2(a-k)/(p+1));
/// (p+1) F(x) ~ x^{p+1} L^a * series. Optimal truncation at rel_tol.
double ibp_series(double L, double p, double a, double rel_tol);
/// G_b(x) = int_0^x v^p log^b(2+v^2) dv with the same strategy as eval_F.
double eval_G(double x, double p, double b, double rel_tol);
} // namespace detail

} // namespace logwave
