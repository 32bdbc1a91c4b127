#pragma once

#include <functional>

namespace logwave::detail {

struct QuadResult {
    double value;
    double abs_error;
};

/// Adaptive Gauss-Kronrod 15(7) on [lo, hi]. Bisects until the summed
/// error estimate is below max(abs_tol, rel_tol * |integral|).
/// Throws NumericError if the interval budget is exhausted first.
QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double lo, double hi,
                              double rel_tol, double abs_tol = 0.0,
                              int max_intervals = 4000);

} // namespace logwave::detail
