#pragma once

#include <cstddef>
#include <vector>

namespace logwave::sim {

/// Gauss-Jacobi rule for int_{-1}^{1} g(y) (1-y^2)^exponent dy, exact for
/// polynomial g up to degree 2n-1. Weights include the singular factor.
struct JacobiQuadrature {
    double exponent = 0.0;
    std::vector<double> nodes;
    std::vector<double> weights;

    double integrate(const std::vector<double>& g_at_nodes) const;
    std::size_t size() const { return nodes.size(); }
};

/// Golub-Welsch construction from the symmetric Jacobi recurrence.
/// Requires exponent > -1 and n >= 2.
JacobiQuadrature build_quadrature(double exponent, int n);

/// First moment int_{-1}^1 (1-y^2)^exponent dy (via log-gamma).
double jacobi_weight_mass(double exponent);

} // namespace logwave::sim
