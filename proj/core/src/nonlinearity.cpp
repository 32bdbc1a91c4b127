#include "logwave/nonlinearity.hpp"

#include "adaptive_quad.hpp"
#include "logwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace logwave {

namespace {

void require_finite(double u, const char* who) {
    if (!std::isfinite(u)) throw DomainError(std::string(who) + ": non-finite input");
}

// log(2 + e^{2t}) for arbitrary t.
double log_2_plus_exp2(double two_t) {
    if (two_t > 700.0) return two_t + std::log1p(2.0 * std::exp(-two_t));
    if (two_t < -700.0) return M_LN2;
    return std::log(2.0 + std::exp(two_t));
}

} // namespace

double LogValue::value() const { return sign * std::exp(log_abs); }

double log_2_plus_sq(double u) {
    const double a = std::abs(u);
    if (a > 1e150) return 2.0 * std::log(a) + std::log1p(2.0 / (a * a));
    return std::log(2.0 + a * a);
}

double log_2_plus_sq_from_log(double log_abs_u) {
    return log_2_plus_exp2(2.0 * log_abs_u);
}

namespace detail {

double eval_f_direct(double u, const Params& prm) {
    if (u == 0.0) return 0.0;
    const double au = std::abs(u);
    return std::pow(au, prm.p - 1.0) * u * std::pow(log_2_plus_sq(u), prm.a);
}

double eval_f_logdomain(double u, const Params& prm) {
    if (u == 0.0) return 0.0;
    const double lau = std::log(std::abs(u));
    const double L = log_2_plus_sq_from_log(lau);
    const double lg = prm.p * lau + prm.a * std::log(L);
    return std::copysign(std::exp(lg), u);
}

bool series_ok(double log_x, double p, double a, double rel_tol) {
    const double L = log_2_plus_sq_from_log(log_x);
    // early terms must decrease and the optimal truncation must reach rel_tol
    if (L < 2.0 * std::abs(a) + 6.0) return false;
    if (L < 2.0 * (-std::log(rel_tol) + 4.0) / (p + 1.0)) return false;
    // dropped W-terms are O(4(|a|+1)/((p-1) L x^2)) relative
    const double need = std::log(4.0 * (std::abs(a) + 1.0) / ((p - 1.0) * L * rel_tol));
    return 2.0 * log_x >= need;
}

double ibp_series(double L, double p, double a, double rel_tol) {
    double sum = 1.0;
    double coef = 1.0;
    double prev_term = 1.0;
    for (int k = 0; k < 80; ++k) {
        coef *= -2.0 * (a - k) / (p + 1.0);
        if (coef == 0.0) return sum; // integer a >= 0: series terminates exactly
        const double term = coef * std::pow(L, -(k + 1));
        if (std::abs(term) > std::abs(prev_term)) {
            // asymptotic series turned; the first omitted term bounds the error
            if (std::abs(term) > rel_tol * std::abs(sum))
                throw NumericError("IBP series for F(u) stalled above tolerance",
                                   std::abs(term / sum));
            return sum;
        }
        sum += term;
        if (std::abs(term) <= 0.5 * rel_tol * std::abs(sum)) return sum;
        prev_term = term;
    }
    return sum;
}

// W_b(x) = int_0^x v^p/(2+v^2) log^b(2+v^2) dv by adaptive quadrature
// (after v = x*tau; magnitude ~ x^{p-1}, always far below G_b).
double eval_W(double x, double p, double b, double rel_tol) {
    if (x == 0.0) return 0.0;
    auto integrand = [&](double tau) {
        const double v = x * tau;
        const double L = log_2_plus_sq(v);
        const double vp = std::pow(v, p);
        return vp / (2.0 + v * v) * std::pow(L, b);
    };
    return x * integrate_adaptive(integrand, 0.0, 1.0, rel_tol).value;
}

double eval_G(double x, double p, double b, double rel_tol) {
    if (x == 0.0) return 0.0;
    if (b == 0.0) return std::pow(x, p + 1.0) / (p + 1.0);
    if (series_ok(std::log(x), p, b, rel_tol)) {
        const double L = log_2_plus_sq(x);
        const double series = ibp_series(L, p, b, rel_tol);
        const double lg = (p + 1.0) * std::log(x) + b * std::log(L) - std::log(p + 1.0);
        return std::exp(lg) * series;
    }
    auto integrand = [&](double tau) {
        const double v = x * tau;
        return std::pow(v, p) * std::pow(log_2_plus_sq(v), b);
    };
    return x * integrate_adaptive(integrand, 0.0, 1.0, rel_tol).value;
}

} // namespace detail

double eval_f(double u, const Params& prm) {
    require_finite(u, "eval_f");
    prm.validate();
    if (u == 0.0) return 0.0;
    const double crossover_sq = std::pow(10.0, 300.0 / prm.p);
    if (u * u > crossover_sq) return detail::eval_f_logdomain(u, prm);
    return detail::eval_f_direct(u, prm);
}

double eval_F(double u, const Params& prm, double rel_tol) {
    require_finite(u, "eval_F");
    prm.validate();
    if (!(rel_tol > 0.0 && rel_tol <= 1e-4))
        throw DomainError("eval_F: rel_tol must lie in (0, 1e-4]");
    const double x = std::abs(u); // F is even
    if (x == 0.0) return 0.0;
    if (prm.a == 0.0) return std::pow(x, prm.p + 1.0) / (prm.p + 1.0);
    return detail::eval_G(x, prm.p, prm.a, rel_tol);
}

double eval_F1(double u, const Params& prm) {
    require_finite(u, "eval_F1");
    prm.validate();
    if (u == 0.0 || prm.a == 0.0) return 0.0;
    const double x = std::abs(u);
    const double L = log_2_plus_sq(x);
    const double pref = -2.0 * prm.a / ((prm.p + 1.0) * (prm.p + 1.0));
    const double lg = (prm.p + 1.0) * std::log(x) + (prm.a - 1.0) * std::log(L);
    return pref * std::exp(lg);
}

double eval_F2(double u, const Params& prm, double rel_tol) {
    require_finite(u, "eval_F2");
    prm.validate();
    if (!(rel_tol > 0.0 && rel_tol <= 1e-4))
        throw DomainError("eval_F2: rel_tol must lie in (0, 1e-4]");
    const double a = prm.a, p = prm.p;
    if (u == 0.0 || a == 0.0) return 0.0;
    const double x = std::abs(u);
    const double q1 = p + 1.0;
    const double g_term = 4.0 * a * (a - 1.0) / (q1 * q1) * detail::eval_G(x, p, a - 2.0, rel_tol);
    const double w2_term = -8.0 * a * (a - 1.0) / (q1 * q1) * detail::eval_W(x, p, a - 2.0, rel_tol);
    const double w1_term = 4.0 * a / q1 * detail::eval_W(x, p, a - 1.0, rel_tol);
    return g_term + w2_term + w1_term;
}

double log_F_from_log(double log_x, const Params& prm, double rel_tol) {
    prm.validate();
    const double p = prm.p, a = prm.a;
    if (a == 0.0) return (p + 1.0) * log_x - std::log(p + 1.0);
    if (detail::series_ok(log_x, p, a, rel_tol)) {
        const double L = log_2_plus_sq_from_log(log_x);
        const double series = detail::ibp_series(L, p, a, rel_tol);
        return (p + 1.0) * log_x + a * std::log(L) - std::log(p + 1.0) + std::log(series);
    }
    const double F = eval_F(std::exp(log_x), prm, std::min(rel_tol, 1e-9));
    return std::log(F);
}

double psi_profile_tau(double tau, const Params& prm) {
    prm.validate();
    if (!std::isfinite(tau) || tau <= 0.0 || tau >= 1.0)
        throw DomainError("psi_profile: requires 0 < T - t < 1");
    const double s = -std::log(tau);
    return std::exp((2.0 / (prm.p - 1.0)) * s - (prm.a / (prm.p - 1.0)) * std::log(s));
}

double psi_profile(double T, double t, const Params& prm) {
    return psi_profile_tau(T - t, prm);
}

double psi_profile_deriv(double T, double t, const Params& prm) {
    const double psi = psi_profile(T, t, prm);
    const double s = -std::log(T - t);
    return psi * std::exp(s) * (2.0 - prm.a / s) / (prm.p - 1.0);
}

double log_phi(double s, const Params& prm) {
    prm.validate();
    if (!(s >= 1.0)) throw DomainError("phi_of_s: requires s >= 1");
    return 2.0 * s / (prm.p - 1.0) - prm.a / (prm.p - 1.0) * std::log(s);
}

LogValue phi_of_s(double s, const Params& prm) {
    return {log_phi(s, prm), 1.0};
}

double gamma_of_s(double s, const Params& prm) {
    prm.validate();
    if (!(s >= 1.0)) throw DomainError("gamma_of_s: requires s >= 1");
    const double d = (prm.p - 1.0) * (prm.p - 1.0);
    return prm.a * (prm.p + 5.0) / (d * s) - prm.a * (prm.p + prm.a - 1.0) / (d * s * s);
}

double rho_weight(double y, double alpha) {
    if (!(std::abs(y) < 1.0)) throw DomainError("rho_weight: requires |y| < 1");
    return std::pow(1.0 - y * y, alpha);
}

double scaled_f(double w, double s, const Params& prm) {
    require_finite(w, "scaled_f");
    if (w == 0.0) {
        prm.validate();
        if (!(s >= 1.0)) throw DomainError("scaled_f: requires s >= 1");
        return 0.0;
    }
    const double lphi = log_phi(s, prm);
    const double lx = lphi + std::log(std::abs(w));
    const double L = log_2_plus_exp2(2.0 * lx); // log(2 + phi^2 w^2)
    const double lg = prm.p * std::log(std::abs(w)) + prm.a * (std::log(L) - std::log(s));
    return std::copysign(std::exp(lg), w);
}

double scaled_F(double w, double s, const Params& prm, double rel_tol) {
    require_finite(w, "scaled_F");
    const double lphi = log_phi(s, prm);
    if (w == 0.0) return 0.0;
    const double law = std::log(std::abs(w));
    const double lx = lphi + law;
    const double p = prm.p, a = prm.a;
    if (a == 0.0 || detail::series_ok(lx, p, a, rel_tol)) {
        // prefactor * x^{p+1} L^a / (p+1) collapses to s^{-a} |w|^{p+1} L^a / (p+1)
        const double L = log_2_plus_exp2(2.0 * lx);
        const double series = (a == 0.0) ? 1.0 : detail::ibp_series(L, p, a, rel_tol);
        const double lg = (p + 1.0) * law + a * (std::log(L) - std::log(s)) - std::log(p + 1.0);
        return std::exp(lg) * series;
    }
    const double F = eval_F(std::exp(lx), prm, std::min(rel_tol, 1e-9));
    if (F == 0.0) return 0.0;
    const double expo = -2.0 * (p + 1.0) * s / (p - 1.0) + (2.0 * a / (p - 1.0)) * std::log(s);
    return std::exp(std::log(F) + expo);
}

} // namespace logwave
