#include "logwave/similarity.hpp"

#include "logwave/csv.hpp"
#include "logwave/errors.hpp"
#include "logwave/interp.hpp"
#include "logwave/nonlinearity.hpp"

#include <algorithm>
#include <cmath>

namespace logwave::sim {

namespace {

void require_rule(const JacobiQuadrature& q, double exponent, const char* who) {
    if (std::abs(q.exponent - exponent) > 1e-12)
        throw DomainError(std::string(who) + ": quadrature exponent mismatch");
}

void require_nodes(const SimilaritySlice& slice, const JacobiQuadrature& q, const char* who) {
    if (slice.y_nodes.size() != q.nodes.size())
        throw DomainError(std::string(who) + ": node count mismatch");
    for (std::size_t i = 0; i < q.nodes.size(); ++i)
        if (std::abs(slice.y_nodes[i] - q.nodes[i]) > 1e-13)
            throw DomainError(std::string(who) + ": slice nodes differ from the rule");
}

// mu(s) = phi'(s)/phi(s)
double log_phi_deriv(double s, const Params& prm) {
    return (2.0 - prm.a / s) / (prm.p - 1.0);
}

} // namespace

SimilaritySlice to_similarity(const pde::WaveState& snapshot, const pde::Grid1D& grid,
                              double x0, double T0, const Params& prm,
                              const JacobiQuadrature& quad) {
    prm.validate();
    grid.validate();
    const double tau = T0 - snapshot.t;
    if (!(tau > 0.0 && tau < 1.0))
        throw DomainError("to_similarity: requires 0 < T0 - t < 1");
    const bool periodic = grid.boundary == pde::Boundary::Periodic;
    if (!periodic && (x0 - tau < grid.x_min || x0 + tau > grid.x_max))
        throw DomainError("to_similarity: light cone exits the grid");

    std::vector<double> u = snapshot.u, ut = snapshot.u_t;
    if (periodic) { // close the seam so the spline covers one full period
        u.push_back(u.front());
        ut.push_back(ut.front());
    }
    const interp::CubicSpline su(grid.x_min, grid.dx(), std::move(u));
    const interp::CubicSpline sut(grid.x_min, grid.dx(), std::move(ut));

    const double s = -std::log(tau);
    const double psi = psi_profile(T0, snapshot.t, prm);
    const double mu = log_phi_deriv(s, prm); // e^{-s} psi'/psi
    const double period = grid.x_max - grid.x_min;

    SimilaritySlice slice;
    slice.s = s;
    slice.x0 = x0;
    slice.T0 = T0;
    slice.params = prm;
    slice.y_nodes = quad.nodes;
    const std::size_t n = quad.nodes.size();
    slice.w.resize(n);
    slice.w_s.resize(n);
    slice.w_y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double y = quad.nodes[i];
        double xq = x0 + y * tau;
        if (periodic) xq = grid.x_min + std::fmod(std::fmod(xq - grid.x_min, period) + period, period);
        const double w = su(xq) / psi;
        const double wy = tau * su.derivative(xq) / psi;
        slice.w[i] = w;
        slice.w_y[i] = wy;
        slice.w_s[i] = tau * sut(xq) / psi - mu * w - y * wy;
    }
    return slice;
}

PhysicalPatch reconstruct_physical(const SimilaritySlice& slice,
                                   const std::vector<double>& xs) {
    const double tau = std::exp(-slice.s);
    const double psi = psi_profile(slice.T0, slice.T0 - tau, slice.params);
    const double mu = log_phi_deriv(slice.s, slice.params);
    interp::Barycentric bary(slice.y_nodes);
    PhysicalPatch out;
    out.u.reserve(xs.size());
    out.u_t.reserve(xs.size());
    for (double x : xs) {
        const double y = (x - slice.x0) / tau;
        if (std::abs(y) >= 1.0)
            throw DomainError("reconstruct_physical: point outside the cone");
        const double w = bary.interpolate(slice.w, y);
        const double ws = bary.interpolate(slice.w_s, y);
        const double wy = bary.interpolate(slice.w_y, y);
        out.u.push_back(psi * w);
        // invert w_s = e^{-s} u_t/psi - mu w - y w_y
        out.u_t.push_back(psi / tau * (ws + mu * w + y * wy));
    }
    return out;
}

double compute_E1(const SimilaritySlice& slice, const JacobiQuadrature& q_alpha) {
    require_rule(q_alpha, slice.params.alpha(), "compute_E1");
    require_nodes(slice, q_alpha, "compute_E1");
    const double p = slice.params.p;
    const double cw = (p + 1.0) / ((p - 1.0) * (p - 1.0));
    double acc = 0.0;
    for (std::size_t i = 0; i < q_alpha.nodes.size(); ++i) {
        const double y = q_alpha.nodes[i];
        const double integrand = 0.5 * slice.w_s[i] * slice.w_s[i] +
                                 0.5 * slice.w_y[i] * slice.w_y[i] * (1.0 - y * y) +
                                 cw * slice.w[i] * slice.w[i] -
                                 scaled_F(slice.w[i], slice.s, slice.params);
        acc += q_alpha.weights[i] * integrand;
    }
    return acc;
}

EnergyN compute_EN(const SimilaritySlice& slice, const JacobiQuadrature& q_alpha,
                   double m, double sigma) {
    require_rule(q_alpha, slice.params.alpha(), "compute_EN");
    require_nodes(slice, q_alpha, "compute_EN");
    const double p = slice.params.p;
    const double s = slice.s;
    const double cw = (p + 1.0) / ((p - 1.0) * (p - 1.0));
    double e = 0.0, j = 0.0;
    for (std::size_t i = 0; i < q_alpha.nodes.size(); ++i) {
        const double y = q_alpha.nodes[i];
        const double grad_sq = slice.w_y[i] * slice.w_y[i];
        const double ygrad_sq = y * y * grad_sq;
        e += q_alpha.weights[i] *
             (0.5 * slice.w_s[i] * slice.w_s[i] + 0.5 * grad_sq - 0.5 * ygrad_sq +
              cw * slice.w[i] * slice.w[i] - scaled_F(slice.w[i], s, slice.params));
        j += q_alpha.weights[i] * slice.w[i] * slice.w_s[i];
    }
    EnergyN out;
    out.E_N = e;
    out.J_N = -j / s;
    out.H_m = out.E_N + m * out.J_N;
    const double b = m * (p + 3.0) / 2.0;
    const double scaled_H =
        out.H_m == 0.0 ? 0.0
                       : std::copysign(std::exp(std::log(std::abs(out.H_m)) - b * std::log(s)),
                                       out.H_m);
    out.N_m = scaled_H + sigma * std::exp(-s);
    return out;
}

LyapunovValues compute_L(const SimilaritySlice& slice, const JacobiQuadrature& q_alpha,
                         const JacobiQuadrature& q_alpha_m1, double theta) {
    require_rule(q_alpha, slice.params.alpha(), "compute_L");
    require_rule(q_alpha_m1, slice.params.alpha() - 1.0, "compute_L");
    require_nodes(slice, q_alpha, "compute_L");
    const double p = slice.params.p;
    const double s = slice.s;

    const double E1 = compute_E1(slice, q_alpha);
    double cross = 0.0;
    for (std::size_t i = 0; i < q_alpha.nodes.size(); ++i)
        cross += q_alpha.weights[i] * slice.w_s[i] * slice.w[i];

    LyapunovValues out;
    out.L0 = E1 - cross / (s * std::sqrt(s));
    out.L = std::exp((p + 3.0) / std::sqrt(s)) * out.L0 + theta * std::exp(-s);

    // dissipation integral carries the weight rho/(1-y^2) = (1-y^2)^{alpha-1}
    interp::Barycentric bary(slice.y_nodes);
    double d = 0.0;
    for (std::size_t i = 0; i < q_alpha_m1.nodes.size(); ++i) {
        const double ws = bary.interpolate(slice.w_s, q_alpha_m1.nodes[i]);
        d += q_alpha_m1.weights[i] * ws * ws;
    }
    out.dissipation = d;
    return out;
}

FunctionalReport functional_report(const SimilaritySlice& slice,
                                   const JacobiQuadrature& q_alpha,
                                   const JacobiQuadrature& q_alpha_m1,
                                   const FunctionalSettings& settings) {
    FunctionalReport rep;
    rep.s = slice.s;
    rep.E1 = compute_E1(slice, q_alpha);
    const EnergyN en = compute_EN(slice, q_alpha, settings.m, settings.sigma);
    rep.J1 = en.J_N;
    rep.H_m = en.H_m;
    rep.N_m = en.N_m;
    const LyapunovValues lv = compute_L(slice, q_alpha, q_alpha_m1, settings.theta);
    rep.L0 = lv.L0;
    rep.L = lv.L;
    rep.dissipation = lv.dissipation;
    rep.sup_w = 0.0;
    for (double w : slice.w) rep.sup_w = std::max(rep.sup_w, std::abs(w));
    return rep;
}

MonotonicityVerdict monotonicity_report(const std::vector<FunctionalReport>& series,
                                        const Params& prm, double slack) {
    if (series.size() < 4) throw DomainError("monotonicity_report: series too short");
    const double ds = series[1].s - series[0].s;
    if (!(ds > 0.0)) throw DomainError("monotonicity_report: series must increase in s");
    for (std::size_t i = 1; i < series.size(); ++i)
        if (std::abs(series[i].s - series[i - 1].s - ds) > 1e-9 * std::max(1.0, ds))
            throw DomainError("monotonicity_report: s-grid is not uniform");
    if (series.back().s - series.front().s < 3.0 - 1e-9)
        throw DomainError("monotonicity_report: series must span >= 3 units of s");
    const auto K = static_cast<std::size_t>(std::llround(1.0 / ds));
    if (K < 1 || std::abs(K * ds - 1.0) > 1e-9)
        throw DomainError("monotonicity_report: ds must divide 1 for s+1 lookups");

    MonotonicityVerdict verdict;
    verdict.slack = slack;
    verdict.ok = true;
    for (std::size_t i = 0; i + K < series.size(); ++i) {
        double integral = 0.0;
        for (std::size_t j = i; j < i + K; ++j)
            integral += 0.5 * (series[j].dissipation + series[j + 1].dissipation) * ds;
        const double lhs = series[i + K].L - series[i].L;
        const double rhs = -2.0 / (prm.p - 1.0) * integral;
        const double mag = std::max(0.0, lhs - rhs);
        const double allowed = slack * std::max(1.0, std::abs(series[i].L));
        ++verdict.n_checks;
        verdict.max_violation = std::max(verdict.max_violation, mag);
        if (mag > allowed) {
            verdict.ok = false;
            verdict.violations.push_back({series[i].s, lhs, rhs, mag});
        }
    }
    return verdict;
}

SimilaritySlice resample_shifted(const SliceProvider& provider, double delta, double s,
                                 const Params& prm, const JacobiQuadrature& quad) {
    prm.validate();
    if (!(delta > 0.0)) throw DomainError("resample_shifted: requires delta > 0");
    const double s_src = -std::log(delta + std::exp(-s));
    if (!(s_src >= 1.0))
        throw DomainError("resample_shifted: shifted time -log(delta+e^{-s}) below s = 1");

    const SimilaritySlice src = provider(s_src);
    if (src.y_nodes.size() != quad.nodes.size())
        throw DomainError("resample_shifted: provider slice does not match the rule");

    // 1/(1+delta e^s) computed stably for any s
    const double le = std::log(delta) + s;
    const double shrink = le > 700.0 ? std::exp(-le) : 1.0 / (1.0 + std::exp(le));
    const double scale = std::exp(log_phi(s_src, prm) - log_phi(s, prm));
    const double mu_src = log_phi_deriv(s_src, prm);
    const double mu = log_phi_deriv(s, prm);

    interp::Barycentric bary(src.y_nodes);
    SimilaritySlice out;
    out.s = s;
    out.x0 = src.x0;
    out.T0 = src.T0 - delta;
    out.params = prm;
    out.y_nodes = quad.nodes;
    const std::size_t n = quad.nodes.size();
    out.w.resize(n);
    out.w_s.resize(n);
    out.w_y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double y = quad.nodes[i];
        const double z = y * shrink;
        const double wz = bary.interpolate(src.w, z);
        const double wzy = bary.interpolate(src.w_y, z);
        const double wzs = bary.interpolate(src.w_s, z);
        out.w[i] = scale * wz;
        out.w_y[i] = scale * wzy * shrink;
        out.w_s[i] = (mu_src * shrink - mu) * out.w[i] +
                     scale * (wzs * shrink - wzy * z * (1.0 - shrink));
    }
    return out;
}

double residual_A(const SimilaritySlice& minus, const SimilaritySlice& center,
                  const SimilaritySlice& plus, const JacobiQuadrature& q_alpha) {
    require_nodes(center, q_alpha, "residual_A");
    const std::size_t n = center.y_nodes.size();
    if (minus.y_nodes != center.y_nodes || plus.y_nodes != center.y_nodes)
        throw DomainError("residual_A: slices use different node sets");
    const double ds1 = center.s - minus.s;
    const double ds2 = plus.s - center.s;
    if (!(ds1 > 0.0) || std::abs(ds1 - ds2) > 1e-9 * ds1)
        throw DomainError("residual_A: slices are not uniformly spaced in s");
    const double ds = ds1;

    const Params& prm = center.params;
    const double p = prm.p, a = prm.a;
    const double s = center.s;
    const double alpha = prm.alpha();

    interp::Barycentric bary(center.y_nodes);
    std::vector<double> ws_fd(n), wss(n);
    for (std::size_t i = 0; i < n; ++i) {
        ws_fd[i] = (plus.w[i] - minus.w[i]) / (2.0 * ds);
        wss[i] = (plus.w[i] - 2.0 * center.w[i] + minus.w[i]) / (ds * ds);
    }
    const std::vector<double> wyy = bary.differentiate(center.w_y);
    const std::vector<double> cross = bary.differentiate(ws_fd);

    const double damp0 = (p + 3.0) / (p - 1.0) - 2.0 * a / ((p - 1.0) * s);
    const double drift = 2.0 * a / ((p - 1.0) * s);
    const double cw = (2.0 * p + 2.0) / ((p - 1.0) * (p - 1.0));
    const double gam = gamma_of_s(s, prm);

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double y = center.y_nodes[i];
        if (std::abs(y) > 0.9) continue;
        const double lap = (1.0 - y * y) * wyy[i] - 2.0 * (alpha + 1.0) * y * center.w_y[i];
        const double rhs = lap + drift * y * center.w_y[i] - cw * center.w[i] +
                           gam * center.w[i] - damp0 * ws_fd[i] - 2.0 * y * cross[i] +
                           scaled_f(center.w[i], s, prm);
        const double r = wss[i] - rhs;
        num += q_alpha.weights[i] * r * r;
        den += q_alpha.weights[i];
    }
    if (den == 0.0) throw DomainError("residual_A: no nodes in |y| <= 0.9");
    return std::sqrt(num / den);
}

SliceNorms slice_norms(const SimilaritySlice& slice, const JacobiQuadrature& legendre) {
    require_rule(legendre, 0.0, "slice_norms");
    require_nodes(slice, legendre, "slice_norms");
    double w2 = 0.0, ws2 = 0.0, wy2 = 0.0, sup = 0.0;
    for (std::size_t i = 0; i < legendre.nodes.size(); ++i) {
        w2 += legendre.weights[i] * slice.w[i] * slice.w[i];
        ws2 += legendre.weights[i] * slice.w_s[i] * slice.w_s[i];
        wy2 += legendre.weights[i] * slice.w_y[i] * slice.w_y[i];
        sup = std::max(sup, std::abs(slice.w[i]));
    }
    SliceNorms out;
    out.l2_w = std::sqrt(w2);
    out.l2_ws = std::sqrt(ws2);
    out.l2_wy = std::sqrt(wy2);
    out.h1 = std::sqrt(w2 + wy2);
    out.sup_w = sup;
    return out;
}

void write_report_csv(const std::vector<FunctionalReport>& series, const std::string& path) {
    csv::Writer w(path, {"s", "E1", "J1", "L0", "L", "H_m", "N_m", "dissipation", "sup_w"});
    for (const auto& r : series)
        w.row({r.s, r.E1, r.J1, r.L0, r.L, r.H_m, r.N_m, r.dissipation, r.sup_w});
}

} // namespace logwave::sim
