#pragma once

#include <vector>

namespace logwave::interp {

/// Natural cubic spline on a uniform grid; O(dx^4) interior interpolation
/// error, O(dx^3) derivative.
class CubicSpline {
public:
    CubicSpline(double x0, double dx, std::vector<double> values);
    double operator()(double x) const;
    double derivative(double x) const;
    double x_min() const { return x0_; }
    double x_max() const { return x0_ + dx_ * (static_cast<double>(y_.size()) - 1.0); }

private:
    double x0_, dx_;
    std::vector<double> y_;
    std::vector<double> m_; // second derivatives at nodes
};

/// Barycentric Lagrange interpolation/differentiation on arbitrary distinct
/// nodes. Weights are computed in log space so large node counts do not
/// underflow the products.
class Barycentric {
public:
    explicit Barycentric(std::vector<double> nodes);

    const std::vector<double>& nodes() const { return x_; }

    /// Interpolate values (sampled on the nodes) at point x.
    double interpolate(const std::vector<double>& values, double x) const;
    std::vector<double> interpolate_many(const std::vector<double>& values,
                                         const std::vector<double>& xs) const;

    /// Dense spectral differentiation matrix D with (Df)_i = f'(x_i).
    const std::vector<std::vector<double>>& diff_matrix() const;
    std::vector<double> differentiate(const std::vector<double>& values) const;

private:
    std::vector<double> x_;
    std::vector<double> w_; // barycentric weights, normalized
    mutable std::vector<std::vector<double>> D_; // built lazily
};

} // namespace logwave::interp
