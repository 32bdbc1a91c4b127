#include "logwave/quadrature.hpp"

#include "logwave/errors.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace logwave::sim {

double jacobi_weight_mass(double exponent) {
    // 2^{2l+1} B(l+1, l+1) = sqrt(pi) Gamma(l+1) / Gamma(l+3/2)
    return std::exp(0.5 * std::log(M_PI) + std::lgamma(exponent + 1.0) -
                    std::lgamma(exponent + 1.5));
}

double JacobiQuadrature::integrate(const std::vector<double>& g_at_nodes) const {
    if (g_at_nodes.size() != nodes.size())
        throw DomainError("JacobiQuadrature::integrate: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * g_at_nodes[i];
    return s;
}

JacobiQuadrature build_quadrature(double exponent, int n) {
    if (!(exponent > -1.0))
        throw DomainError("build_quadrature: Jacobi exponent must exceed -1");
    if (n < 2) throw DomainError("build_quadrature: need n >= 2");

    // Symmetric Jacobi (alpha = beta = exponent): zero diagonal,
    // off-diagonal b_k = sqrt(k (k+2l) / (4(k+l)^2 - 1)).
    const double l = exponent;
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(n - 1);
    for (int k = 1; k < n; ++k) {
        const double kk = k;
        sub[k - 1] = std::sqrt(kk * (kk + 2.0 * l) / (4.0 * (kk + l) * (kk + l) - 1.0));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success)
        throw NumericError("build_quadrature: tridiagonal eigensolve failed", 0.0);

    const double mu0 = jacobi_weight_mass(exponent);
    JacobiQuadrature q;
    q.exponent = exponent;
    q.nodes.resize(n);
    q.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        q.nodes[i] = es.eigenvalues()[i];
        const double v0 = es.eigenvectors()(0, i);
        q.weights[i] = mu0 * v0 * v0;
    }
    return q;
}

} // namespace logwave::sim
