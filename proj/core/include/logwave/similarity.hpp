#pragma once

#include "logwave/params.hpp"
#include "logwave/pde_solver.hpp"
#include "logwave/quadrature.hpp"

#include <functional>
#include <string>
#include <vector>

namespace logwave::sim {

/// w, ds w, dy w sampled on quadrature nodes in (-1,1) at similarity time s,
/// for the frame (x0, T0): y = (x-x0)/(T0-t), s = -log(T0-t), u = psi w.
struct SimilaritySlice {
    double s = 0.0;
    double x0 = 0.0;
    double T0 = 0.0;
    std::vector<double> y_nodes;
    std::vector<double> w;
    std::vector<double> w_s;
    std::vector<double> w_y;
    Params params;
};

struct FunctionalReport {
    double s;
    double E1;
    double J1;          ///< -(1/s) int w w_s rho dy
    double L0;          ///< E1 + J1 / sqrt(s)
    double L;           ///< exp((p+3)/sqrt(s)) L0 + theta e^{-s}
    double H_m;         ///< E_N + m J_N
    double N_m;         ///< s^{-m(p+3)/2} H_m + sigma e^{-s}
    double dissipation; ///< int w_s^2 rho/(1-y^2) dy
    double sup_w;
};

struct FunctionalSettings {
    double theta = 10.0;
    double m = 20.0;
    double sigma = 1.0;
};

/// Map a physical snapshot into similarity variables on the rule's nodes.
/// w by cubic-spline interpolation of u; w_y from the interpolant; w_s by the
/// chain rule w_s = e^{-s} u_t/psi - (2/(p-1) - a/((p-1)s)) w - y w_y.
/// Requires 0 < T0 - t < 1 and the cone (x0 +- (T0-t)) inside the grid.
SimilaritySlice to_similarity(const pde::WaveState& snapshot, const pde::Grid1D& grid,
                              double x0, double T0, const Params& prm,
                              const JacobiQuadrature& quad);

struct PhysicalPatch {
    std::vector<double> u;
    std::vector<double> u_t;
};

/// Inverse transform at the slice's own time, barycentric-interpolated at xs.
PhysicalPatch reconstruct_physical(const SimilaritySlice& slice,
                                   const std::vector<double>& xs);

/// Natural energy E1 (quad must carry exponent alpha(params)).
double compute_E1(const SimilaritySlice& slice, const JacobiQuadrature& q_alpha);

struct EnergyN {
    double E_N, J_N, H_m, N_m;
};
/// General-N energy family; in 1D E_N coincides with E1 term by term.
EnergyN compute_EN(const SimilaritySlice& slice, const JacobiQuadrature& q_alpha,
                   double m, double sigma);

struct LyapunovValues {
    double L0, L, dissipation;
};
/// L0 = E1 - s^{-3/2} int w_s w rho dy, L = exp((p+3)/sqrt s) L0 + theta e^{-s};
/// the dissipation integral uses the (alpha-1)-rule (w_s interpolated onto it).
LyapunovValues compute_L(const SimilaritySlice& slice, const JacobiQuadrature& q_alpha,
                         const JacobiQuadrature& q_alpha_m1, double theta);

FunctionalReport functional_report(const SimilaritySlice& slice,
                                   const JacobiQuadrature& q_alpha,
                                   const JacobiQuadrature& q_alpha_m1,
                                   const FunctionalSettings& settings);

struct Violation {
    double s;
    double lhs;       ///< L(s+1) - L(s)
    double rhs;       ///< -(2/(p-1)) int_s^{s+1} dissipation
    double magnitude; ///< max(0, lhs - rhs)
};

struct MonotonicityVerdict {
    bool ok = false;
    std::size_t n_checks = 0;
    double max_violation = 0.0; ///< beyond the slack
    double slack = 0.0;
    std::vector<Violation> violations; ///< entries with magnitude > slack scale
};

/// Check L(s+1)-L(s) <= -(2/(p-1)) int_s^{s+1} dissipation + slack on a
/// uniform s-grid (trapezoid in time). slack is per-check, relative to
/// max(1, |L(s)|). Throws if the series spans < 3 units of s past its start.
MonotonicityVerdict monotonicity_report(const std::vector<FunctionalReport>& series,
                                        const Params& prm, double slack = 1e-3);

using SliceProvider = std::function<SimilaritySlice(double s)>;

/// Shifted-blow-up-time field
///   w~(y,s) = [phi(-log(delta+e^{-s}))/phi(s)] w(y/(1+delta e^s), -log(delta+e^{-s})),
/// with w_y and w_s carried through the chain rule; scale factors assembled in
/// log space so delta-shifts stay finite at any s.
SimilaritySlice resample_shifted(const SliceProvider& provider, double delta, double s,
                                 const Params& prm, const JacobiQuadrature& quad);

/// Residual of the similarity-variables equation on three consecutive slices
/// (spacing ds): second-order differences in s, barycentric-spectral y
/// derivatives, weighted L2 norm over |y| <= 0.9.
double residual_A(const SimilaritySlice& minus, const SimilaritySlice& center,
                  const SimilaritySlice& plus, const JacobiQuadrature& q_alpha);

struct SliceNorms {
    double l2_w, l2_ws, l2_wy; ///< unweighted L2 norms over (-1,1)
    double h1;                 ///< sqrt(l2_w^2 + l2_wy^2)
    double sup_w;
};

/// Unweighted norms; quad must be the Legendre rule (exponent 0) on the
/// slice's nodes.
SliceNorms slice_norms(const SimilaritySlice& slice, const JacobiQuadrature& legendre);

/// CSV export of a functional series:
/// s,E1,J1,L0,L,H_m,N_m,dissipation,sup_w.
void write_report_csv(const std::vector<FunctionalReport>& series, const std::string& path);

} // namespace logwave::sim
