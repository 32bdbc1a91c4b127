#include "logwave/ode_blowup.hpp"

#include "adaptive_quad.hpp"
#include "logwave/csv.hpp"
#include "logwave/errors.hpp"
#include "logwave/fitting.hpp"
#include "logwave/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace logwave::ode {

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 4th-order solution weights (for the error estimate)
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

struct State {
    double v, w; // w = v'
};

// log(2 F(u) + C), valid for u far beyond double range via log F.
double log_2F_plus_C(double log_u, double C, const Params& prm) {
    const double l2F = M_LN2 + log_F_from_log(log_u, prm, 1e-12);
    if (l2F > 700.0) return l2F; // C is negligible at this magnitude
    const double val = 2.0 * std::exp(l2F - M_LN2) + C;
    return std::log(val);
}

// int_{v1}^{v2} du / sqrt(2F(u)+C), a bounded phase-plane segment
double segment_time(double v1, double v2, double C, const Params& prm) {
    auto integrand = [&](double u) {
        return std::exp(-0.5 * log_2F_plus_C(std::log(u), C, prm));
    };
    return detail::integrate_adaptive(integrand, v1, v2, 1e-11).value;
}

// backward accumulation of T - t_i for every stored sample
void fill_remaining(OdeTrajectory& traj) {
    auto& smp = traj.samples;
    const double C = traj.energy_constant;
    double rem = tail_time(smp.back().v, C, traj.params);
    smp.back().remaining = rem;
    for (std::size_t i = smp.size() - 1; i-- > 0;) {
        rem += segment_time(smp[i].v, smp[i + 1].v, C, traj.params);
        smp[i].remaining = rem;
    }
}

} // namespace

OdeTrajectory integrate(double A, double B, const Params& prm,
                        double stop_value, double rel_tol) {
    prm.validate();
    if (!(A > 0.0) || !(B > 0.0)) throw DomainError("integrate: requires A > 0 and B > 0");
    if (!(stop_value > A)) throw DomainError("integrate: requires stop_value > A");
    if (!(rel_tol > 0.0 && rel_tol <= 1e-4))
        throw DomainError("integrate: rel_tol must lie in (0, 1e-4]");

    const double F_tol = std::min(1e-13, rel_tol * 1e-2);
    auto F = [&](double v) { return eval_F(v, prm, std::max(F_tol, 1e-14)); };
    auto f = [&](double v) { return eval_f(v, prm); };

    OdeTrajectory traj;
    traj.params = prm;
    traj.stop_value = stop_value;
    traj.rel_tol = rel_tol;
    traj.energy_constant = B * B - 2.0 * F(A);
    const double C = traj.energy_constant;

    State y{A, B};
    double t = 0.0;
    traj.samples.push_back({t, A, B, 0.0});
    double next_level = 2.0 * A;

    double h = std::min(0.05 * A / B, 1e-2);
    const double safety = 0.9;
    double max_drift = 0.0;

    auto rhs = [&](const State& s) { return State{s.w, f(s.v)}; };

    std::size_t step_count = 0;
    const std::size_t max_steps = 2'000'000;
    State k1 = rhs(y);
    while (y.v < stop_value) {
        if (++step_count > max_steps)
            throw IntegrationError("integrate: step budget exhausted", t, y.v, y.w);
        // ceiling keyed to the local time-to-blow-up scale v/v'
        h = std::min(h, 0.05 * y.v / y.w);

        const State k2 = rhs({y.v + h * a21 * k1.v, y.w + h * a21 * k1.w});
        const State k3 = rhs({y.v + h * (a31 * k1.v + a32 * k2.v),
                              y.w + h * (a31 * k1.w + a32 * k2.w)});
        const State k4 = rhs({y.v + h * (a41 * k1.v + a42 * k2.v + a43 * k3.v),
                              y.w + h * (a41 * k1.w + a42 * k2.w + a43 * k3.w)});
        const State k5 = rhs({y.v + h * (a51 * k1.v + a52 * k2.v + a53 * k3.v + a54 * k4.v),
                              y.w + h * (a51 * k1.w + a52 * k2.w + a53 * k3.w + a54 * k4.w)});
        const State k6 = rhs({y.v + h * (a61 * k1.v + a62 * k2.v + a63 * k3.v + a64 * k4.v +
                                         a65 * k5.v),
                              y.w + h * (a61 * k1.w + a62 * k2.w + a63 * k3.w + a64 * k4.w +
                                         a65 * k5.w)});
        const State y5{y.v + h * (b1 * k1.v + b3 * k3.v + b4 * k4.v + b5 * k5.v + b6 * k6.v),
                       y.w + h * (b1 * k1.w + b3 * k3.w + b4 * k4.w + b5 * k5.w + b6 * k6.w)};
        const State k7 = rhs(y5);
        const State y4{y.v + h * (e1 * k1.v + e3 * k3.v + e4 * k4.v + e5 * k5.v + e6 * k6.v +
                                  e7 * k7.v),
                       y.w + h * (e1 * k1.w + e3 * k3.w + e4 * k4.w + e5 * k5.w + e6 * k6.w +
                                  e7 * k7.w)};

        const double sc_v = rel_tol * std::max(std::abs(y.v), std::abs(y5.v));
        const double sc_w = rel_tol * std::max(std::abs(y.w), std::abs(y5.w));
        const double err = std::sqrt(0.5 * (std::pow((y5.v - y4.v) / sc_v, 2) +
                                            std::pow((y5.w - y4.w) / sc_w, 2)));

        if (err <= 1.0) {
            t += h;
            y = y5;
            k1 = k7; // FSAL
            const double resid =
                std::abs(y.w * y.w - 2.0 * F(y.v) - C) / std::max(1.0, y.w * y.w);
            max_drift = std::max(max_drift, resid);
            if (resid > 100.0 * rel_tol)
                throw IntegrationError("integrate: first-integral drift exceeded 100x rel_tol",
                                       t, y.v, y.w);
            if (y.v >= next_level || y.v >= stop_value) {
                traj.samples.push_back({t, y.v, y.w, resid});
                while (next_level <= y.v) next_level *= 2.0;
            }
        }
        const double grow = safety * std::pow(std::max(err, 1e-10), -0.2);
        h *= std::clamp(grow, 0.2, 5.0);
    }

    traj.energy_tolerance = max_drift;
    if (traj.samples.back().v != y.v) traj.samples.push_back({t, y.v, y.w, 0.0});
    if (y.v >= 1e8) {
        traj.T_estimate = estimate_blowup_time(traj);
        fill_remaining(traj);
    }
    return traj;
}

double tail_time(double v, double C, const Params& prm) {
    prm.validate();
    if (!(v > 0.0)) throw DomainError("tail_time: requires v > 0");
    const double log_v = std::log(v);
    // u = v * zeta^{-m}; m chosen so the integrand vanishes at zeta = 0
    const int m = std::max(2, static_cast<int>(std::ceil(4.0 / (prm.p - 1.0))));
    auto integrand = [&](double zeta) {
        if (zeta <= 0.0) return 0.0;
        const double log_u = log_v - m * std::log(zeta);
        const double lg = std::log(static_cast<double>(m)) + log_v -
                          (m + 1) * std::log(zeta) -
                          0.5 * log_2F_plus_C(log_u, C, prm);
        return std::exp(lg);
    };
    return detail::integrate_adaptive(integrand, 0.0, 1.0, 1e-11).value;
}

double estimate_blowup_time(const OdeTrajectory& traj, int sample_index) {
    if (traj.samples.empty()) throw DomainError("estimate_blowup_time: empty trajectory");
    const OdeSample& smp = sample_index < 0
                               ? traj.samples.back()
                               : traj.samples.at(static_cast<std::size_t>(sample_index));
    if (!(smp.v >= 1e8))
        throw DomainError("estimate_blowup_time: sample must satisfy v >= 1e8");
    return smp.t + tail_time(smp.v, traj.energy_constant, traj.params);
}

namespace {

// gap of a sample relative to the requested blow-up time T; the accumulated
// `remaining` field survives where the plain difference T - t washes out
double sample_tau(const OdeSample& s, const OdeTrajectory& traj, double T) {
    if (std::isfinite(s.remaining)) return s.remaining + (T - traj.T_estimate);
    return T - s.t;
}

} // namespace

std::vector<RatioPoint> profile_ratio(const OdeTrajectory& traj, double T) {
    std::vector<RatioPoint> out;
    const double e_inv = std::exp(-1.0);
    for (const auto& s : traj.samples) {
        const double tau = sample_tau(s, traj, T);
        if (!(tau > 0.0) || tau >= e_inv) continue;
        out.push_back({-std::log(tau), s.v / psi_profile_tau(tau, traj.params)});
    }
    return out;
}

ExponentFit fit_exponents(const OdeTrajectory& traj, double T,
                          double window_lo, double window_hi) {
    std::vector<double> g, target;
    for (const auto& s : traj.samples) {
        const double tau = sample_tau(s, traj, T);
        if (!(tau > 0.0)) continue;
        const double gap = -std::log(tau);
        if (gap < window_lo || gap > window_hi) continue;
        g.push_back(gap);
        target.push_back(std::log(s.v));
    }
    if (g.size() < 8 || g.back() - g.front() < 0.5 * (window_hi - window_lo))
        throw DomainError("fit_exponents: samples do not span the requested log_gap window");

    // log v = beta * gap - lambda * log(gap) + c
    std::vector<std::vector<double>> cols(3);
    for (double gap : g) {
        cols[0].push_back(gap);
        cols[1].push_back(-std::log(gap));
        cols[2].push_back(1.0);
    }
    const std::vector<double> coef = fit::least_squares(cols, target);
    return {coef[0], coef[1], coef[2], g.size()};
}

void write_trajectory_csv(const OdeTrajectory& traj, const std::string& path) {
    csv::Writer w(path, {"t", "v", "v_prime", "energy_residual"});
    for (const auto& s : traj.samples) w.row({s.t, s.v, s.v_prime, s.energy_residual});
}

} // namespace logwave::ode
