#pragma once

#include <vector>

namespace logwave::fit {

/// Solve min ||A c - y||_2 where A is given column-wise. Normal equations
/// with partial pivoting; fine for the tiny systems used here.
std::vector<double> least_squares(const std::vector<std::vector<double>>& columns,
                                  const std::vector<double>& y);

struct SlopeFit {
    double slope;
    double intercept;
    double slope_stderr; ///< one-sigma half-width from the residual variance
};

/// Ordinary least squares of y against x.
SlopeFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

} // namespace logwave::fit
