#include "adaptive_quad.hpp"

#include "logwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace logwave::detail {

namespace {

// Gauss-Kronrod 15-point nodes/weights on [-1,1] (Kronrod extension of G7).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double lo, hi, value, err;
    bool operator<(const Panel& other) const { return err < other.err; }
};

Panel eval_panel(const std::function<double(double)>& f, double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    double resk = kWgk[7] * f(c);
    double resg = kWg[3] * f(c);
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double fsum = f(c - x) + f(c + x);
        resk += kWgk[j] * fsum;
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    }
    const double value = resk * h;
    const double err = std::abs((resk - resg) * h);
    return {lo, hi, value, err};
}

} // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double lo, double hi,
                              double rel_tol, double abs_tol,
                              int max_intervals) {
    if (lo == hi) return {0.0, 0.0};
    std::priority_queue<Panel> heap;
    heap.push(eval_panel(f, lo, hi));
    double total = heap.top().value;
    double total_err = heap.top().err;
    int n = 1;
    while (n < max_intervals) {
        const double tol = std::max(abs_tol, rel_tol * std::abs(total));
        if (total_err <= tol) break;
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi) {
            // interval at machine resolution; accept its estimate
            heap.push({worst.lo, worst.hi, worst.value, 0.0});
            total_err -= worst.err;
            continue;
        }
        Panel left = eval_panel(f, worst.lo, mid);
        Panel right = eval_panel(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++n;
    }
    const double tol = std::max(abs_tol, rel_tol * std::abs(total));
    if (!(total_err <= tol) || !std::isfinite(total)) {
        const double achieved = std::abs(total) > 0 ? total_err / std::abs(total) : total_err;
        throw NumericError("adaptive quadrature did not converge", achieved);
    }
    return {total, total_err};
}

} // namespace logwave::detail
