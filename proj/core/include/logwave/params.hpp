#pragma once

#include <string>

namespace logwave {

/// Problem parameters of the nonlinearity f(u) = |u|^{p-1} u log^a(2+u^2)
/// and the space dimension N used by the similarity weights.
///
/// Valid range: p > 1, any real a, N >= 1, and for N >= 2 the subconformal
/// condition p < 1 + 4/(N-1) (equivalently alpha > 0).
struct Params {
    double p = 3.0;
    double a = 0.0;
    int N = 1;

    /// Similarity weight exponent alpha = 2/(p-1) - (N-1)/2.
    double alpha() const { return 2.0 / (p - 1.0) - 0.5 * (N - 1); }

    bool valid() const;
    /// Throws DomainError naming the offending field.
    void validate() const;
};

/// Constants derived from Params.
struct DerivedConstants {
    double alpha;   ///< 2/(p-1) - (N-1)/2
    double kappa_a; ///< (2^{1-2a}(p+1)/(p-1)^{2-a})^{1/(p-1)}
    double p_bar;   ///< p+1 for N in {1,2}; p + 2/(N-2) - 2/(N-1) for N >= 3

    static DerivedConstants from(const Params& prm);
};

/// Limit constant of the blow-up ODE profile v(t)/psi_T(t).
double kappa(const Params& prm);

/// Growth-bound exponent used by F(phi z) <= C + C|phi z|^{p_bar+1}.
double p_bar(const Params& prm);

} // namespace logwave
