#include "logwave/params.hpp"

#include "logwave/errors.hpp"

#include <cmath>

namespace logwave {

bool Params::valid() const {
    if (!std::isfinite(p) || !std::isfinite(a)) return false;
    if (p <= 1.0) return false;
    if (N < 1) return false;
    if (N >= 2 && p >= 1.0 + 4.0 / (N - 1)) return false;
    return true;
}

void Params::validate() const {
    if (!std::isfinite(p) || !std::isfinite(a))
        throw DomainError("Params: p and a must be finite");
    if (p <= 1.0)
        throw DomainError("Params: p must exceed 1");
    if (N < 1)
        throw DomainError("Params: N must be a positive integer");
    if (N >= 2 && p >= 1.0 + 4.0 / (N - 1))
        throw DomainError("Params: subconformal range requires p < 1 + 4/(N-1)");
}

double kappa(const Params& prm) {
    prm.validate();
    const double lg = ((1.0 - 2.0 * prm.a) * M_LN2 + std::log(prm.p + 1.0) -
                       (2.0 - prm.a) * std::log(prm.p - 1.0)) /
                      (prm.p - 1.0);
    return std::exp(lg);
}

double p_bar(const Params& prm) {
    prm.validate();
    if (prm.N <= 2) return prm.p + 1.0;
    return prm.p + 2.0 / (prm.N - 2) - 2.0 / (prm.N - 1);
}

DerivedConstants DerivedConstants::from(const Params& prm) {
    prm.validate();
    return {prm.alpha(), kappa(prm), logwave::p_bar(prm)};
}

} // namespace logwave
