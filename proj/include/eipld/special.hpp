#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

// Self-contained special functions and numeric primitives used by the
// distribution core: the negative branch of the Lambert W function,
// log-gamma, generalized binomial coefficients, and adaptive quadrature
// over the positive half line.

namespace eipld {

/// log(1 + e^t) without overflow for large |t|.
inline double softplus(double t) {
    if (t > 0.0) return t + std::log1p(std::exp(-t));
    return std::log1p(std::exp(t));
}

/// log(1 - e^t) for t < 0.
inline double log1mexp(double t) {
    constexpr double ln2 = 0.6931471805599453;
    if (t > -ln2) return std::log(-std::expm1(t));
    return std::log1p(-std::exp(t));
}

/// Negative real branch W_{-1} of the Lambert W function.
///
/// Defined on [-1/e, 0) with values in (-inf, -1]. Solves w * e^w = x.
/// Throws std::domain_error outside the domain.
double lambert_w_minus1(double x);

/// W_{-1}(-exp(log_neg_x)) for log_neg_x <= -1.
///
/// Log-argument form of lambert_w_minus1; lets callers reach arguments
/// whose magnitude underflows double precision (x as small as -e^{-746}
/// and beyond).
double lambert_w_minus1_from_log(double log_neg_x);

/// Natural log of the gamma function for x > 0.
double log_gamma(double x);

/// Generalized binomial coefficient C(a, i) for real a and integer i >= 0.
///
/// Computed by the multiplicative recurrence prod_{j=1..i} (a-j+1)/j, so it
/// is exactly zero for nonnegative integer a with i > a and has no poles
/// for negative real a.
double gen_binomial(double a, long i);

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long evaluations = 0;
};

/// Thrown when the adaptive scheme exhausts its subdivision budget before
/// reaching the requested tolerance; carries the best estimate found.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, QuadratureResult best_estimate)
        : std::runtime_error(what), best(best_estimate) {}
    QuadratureResult best;
};

/// Adaptive integration of f over (0, inf).
///
/// The half line is split at z = 1 and each piece is mapped onto (0,1) by
/// z = exp(-y) resp. z = exp(+y) with y = s/(1-s). The double-exponential
/// reach of that change of variables compactifies polynomially decaying
/// tails, which the raw Moebius map z/(1+z) cannot resolve to tight
/// absolute tolerances. Each piece is then handled by adaptive
/// Gauss-Kronrod 7/15 bisection with the QUADPACK error estimate.
///
/// Returns once the summed error estimate is <= tol; throws QuadratureError
/// (carrying the best estimate) if the subdivision budget is exhausted.
QuadratureResult integrate_positive_halfline(const std::function<double(double)>& f,
                                             double tol);

}  // namespace eipld
