#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

namespace {

long double simpson(const std::function<long double(long double)>& f, long double lo,
                    long double hi, long double flo, long double fmid, long double fhi) {
    return (hi - lo) / 6.0L * (flo + 4.0L * fmid + fhi);
}

long double adapt(const std::function<long double(long double)>& f, long double lo,
                  long double hi, long double flo, long double fmid, long double fhi,
                  long double whole, long double tol, int depth) {
    const long double mid = 0.5L * (lo + hi);
    const long double lmid = 0.5L * (lo + mid), rmid = 0.5L * (mid + hi);
    const long double flm = f(lmid), frm = f(rmid);
    const long double left = simpson(f, lo, mid, flo, flm, fmid);
    const long double right = simpson(f, mid, hi, fmid, frm, fhi);
    const long double err = left + right - whole;
    if (depth <= 0) throw std::runtime_error("oracle::integrate: depth exhausted");
    if (std::fabs(err) <= 15.0L * tol) return left + right + err / 15.0L;
    return adapt(f, lo, mid, flo, flm, fmid, left, 0.5L * tol, depth - 1) +
           adapt(f, mid, hi, fmid, frm, fhi, right, 0.5L * tol, depth - 1);
}

} // namespace

long double integrate(const std::function<long double(long double)>& f, long double lo,
                      long double hi, long double rel_tol) {
    if (lo == hi) return 0.0L;
    const long double flo = f(lo), fhi = f(hi), fmid = f(0.5L * (lo + hi));
    const long double whole = simpson(f, lo, hi, flo, fmid, fhi);
    const long double scale = std::fabs(whole) > 0.0L ? std::fabs(whole) : 1.0L;
    return adapt(f, lo, hi, flo, fmid, fhi, whole, rel_tol * scale, 60);
}

long double f_long(long double u, long double p, long double a) {
    if (u == 0.0L) return 0.0L;
    const long double au = std::fabs(u);
    const long double L = au > 1e150L ? 2.0L * std::log(au) + std::log1p(2.0L / (au * au))
                                      : std::log(2.0L + au * au);
    return std::pow(au, p - 1.0L) * u * std::pow(L, a);
}

long double F_long(long double u, long double p, long double a, long double rel_tol) {
    if (u == 0.0L) return 0.0L;
    const long double x = std::fabs(u);
    return x * integrate([&](long double t) { return f_long(x * t, p, a); }, 0.0L, 1.0L,
                         rel_tol);
}

long double tail_long(long double v, long double C, long double p, long double a) {
    const int m = std::max(2, static_cast<int>(std::ceil(4.0L / (p - 1.0L))));
    auto g = [&](long double z) -> long double {
        if (z <= 0.0L) return 0.0L;
        const long double u = v * std::pow(z, static_cast<long double>(-m));
        return m * v * std::pow(z, static_cast<long double>(-(m + 1))) /
               std::sqrt(2.0L * F_long(u, p, a, 1e-12L) + C);
    };
    return integrate(g, 0.0L, 1.0L, 1e-12L);
}

long double v_at_gap(long double log_gap, long double C, long double p, long double a) {
    const long double tau = std::exp(-log_gap);
    long double hi = 2.0L;
    while (tail_long(hi, C, p, a) > tau) hi *= 10.0L;
    long double lo = hi / 10.0L;
    for (int it = 0; it < 200; ++it) {
        const long double mid = 0.5L * (lo + hi);
        if (tail_long(mid, C, p, a) > tau)
            lo = mid;
        else
            hi = mid;
        if ((hi - lo) / hi < 1e-14L) break;
    }
    return 0.5L * (lo + hi);
}

} // namespace oracle
