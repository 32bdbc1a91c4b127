#include "logwave/fitting.hpp"

#include "logwave/errors.hpp"

#include <cmath>
#include <cstddef>

namespace logwave::fit {

std::vector<double> least_squares(const std::vector<std::vector<double>>& columns,
                                  const std::vector<double>& y) {
    const std::size_t k = columns.size();
    const std::size_t n = y.size();
    if (k == 0 || n < k) throw DomainError("least_squares: underdetermined system");
    for (const auto& c : columns)
        if (c.size() != n) throw DomainError("least_squares: ragged design matrix");

    // normal equations G c = b
    std::vector<std::vector<double>> G(k, std::vector<double>(k + 1, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            double s = 0.0;
            for (std::size_t r = 0; r < n; ++r) s += columns[i][r] * columns[j][r];
            G[i][j] = s;
        }
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r) s += columns[i][r] * y[r];
        G[i][k] = s;
    }
    // Gaussian elimination with partial pivoting
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::abs(G[r][col]) > std::abs(G[piv][col])) piv = r;
        std::swap(G[col], G[piv]);
        if (G[col][col] == 0.0) throw NumericError("least_squares: singular normal matrix", 0.0);
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col) continue;
            const double fac = G[r][col] / G[col][col];
            for (std::size_t c = col; c <= k; ++c) G[r][c] -= fac * G[col][c];
        }
    }
    std::vector<double> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = G[i][k] / G[i][i];
    return out;
}

SlopeFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2) throw DomainError("linear_fit: need >= 2 paired points");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw DomainError("linear_fit: degenerate abscissae");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - slope * x[i] - intercept;
        ss_res += r * r;
    }
    const double var = n > 2 ? ss_res / (n - 2) : 0.0;
    return {slope, intercept, std::sqrt(var / sxx)};
}

} // namespace logwave::fit
