#include "logwave/interp.hpp"

#include "logwave/errors.hpp"

#include <algorithm>
#include <cmath>

namespace logwave::interp {

CubicSpline::CubicSpline(double x0, double dx, std::vector<double> values)
    : x0_(x0), dx_(dx), y_(std::move(values)) {
    const std::size_t n = y_.size();
    if (n < 3 || !(dx > 0.0)) throw DomainError("CubicSpline: need >= 3 uniform nodes");
    m_.assign(n, 0.0);
    // tridiagonal solve for natural spline second derivatives
    std::vector<double> diag(n, 2.0), rhs(n, 0.0), c(n, 0.5);
    for (std::size_t i = 1; i + 1 < n; ++i)
        rhs[i] = 3.0 * (y_[i + 1] - 2.0 * y_[i] + y_[i - 1]) / (dx_ * dx_);
    // forward sweep over interior unknowns m_[1..n-2]
    for (std::size_t i = 2; i + 1 < n; ++i) {
        const double fac = 0.5 / diag[i - 1];
        diag[i] -= fac * c[i - 1] * 1.0;
        rhs[i] -= fac * rhs[i - 1];
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        const double upper = (i + 2 < n) ? c[i] * m_[i + 1] : 0.0;
        m_[i] = (rhs[i] - upper) / diag[i];
        if (i == 1) break;
    }
}

double CubicSpline::operator()(double x) const {
    const std::size_t n = y_.size();
    double fi = (x - x0_) / dx_;
    if (fi < 0.0 || fi > static_cast<double>(n - 1))
        throw DomainError("CubicSpline: evaluation outside the grid");
    std::size_t i = std::min(static_cast<std::size_t>(fi), n - 2);
    const double t = (x - (x0_ + dx_ * static_cast<double>(i))) / dx_;
    const double h2 = dx_ * dx_;
    const double A = 1.0 - t, B = t;
    return A * y_[i] + B * y_[i + 1] +
           ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h2 / 6.0;
}

double CubicSpline::derivative(double x) const {
    const std::size_t n = y_.size();
    double fi = (x - x0_) / dx_;
    if (fi < 0.0 || fi > static_cast<double>(n - 1))
        throw DomainError("CubicSpline: evaluation outside the grid");
    std::size_t i = std::min(static_cast<std::size_t>(fi), n - 2);
    const double t = (x - (x0_ + dx_ * static_cast<double>(i))) / dx_;
    const double A = 1.0 - t, B = t;
    return (y_[i + 1] - y_[i]) / dx_ +
           dx_ / 6.0 * ((3.0 * B * B - 1.0) * m_[i + 1] - (3.0 * A * A - 1.0) * m_[i]);
}

Barycentric::Barycentric(std::vector<double> nodes) : x_(std::move(nodes)) {
    const std::size_t n = x_.size();
    if (n < 2) throw DomainError("Barycentric: need >= 2 nodes");
    // log-magnitude products keep w finite for large n
    std::vector<double> lw(n, 0.0);
    std::vector<double> sign(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d = x_[i] - x_[j];
            if (d == 0.0) throw DomainError("Barycentric: repeated nodes");
            lw[i] -= std::log(std::abs(d));
            if (d < 0.0) sign[i] = -sign[i];
        }
    }
    const double lmax = *std::max_element(lw.begin(), lw.end());
    w_.resize(n);
    for (std::size_t i = 0; i < n; ++i) w_[i] = sign[i] * std::exp(lw[i] - lmax);
}

double Barycentric::interpolate(const std::vector<double>& values, double x) const {
    const std::size_t n = x_.size();
    if (values.size() != n) throw DomainError("Barycentric: value count mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = x - x_[i];
        if (d == 0.0) return values[i];
        const double c = w_[i] / d;
        num += c * values[i];
        den += c;
    }
    return num / den;
}

std::vector<double> Barycentric::interpolate_many(const std::vector<double>& values,
                                                  const std::vector<double>& xs) const {
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = interpolate(values, xs[i]);
    return out;
}

const std::vector<std::vector<double>>& Barycentric::diff_matrix() const {
    if (!D_.empty()) return D_;
    const std::size_t n = x_.size();
    D_.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        double diag = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            D_[i][j] = (w_[j] / w_[i]) / (x_[i] - x_[j]);
            diag -= D_[i][j];
        }
        D_[i][i] = diag;
    }
    return D_;
}

std::vector<double> Barycentric::differentiate(const std::vector<double>& values) const {
    const auto& D = diff_matrix();
    const std::size_t n = x_.size();
    if (values.size() != n) throw DomainError("Barycentric: value count mismatch");
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += D[i][j] * values[j];
        out[i] = s;
    }
    return out;
}

} // namespace logwave::interp
