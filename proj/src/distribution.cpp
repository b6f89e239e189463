#include "eipld/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace eipld {

namespace {

void require_positive(double z) {
    if (!(z > 0.0)) throw std::domain_error("eipld: argument z must be positive");
}

// Shared log-space pieces. With t = ln z and c = ln(b) - ln(1+b):
//   ln(1 + z^a)              = softplus(a t)
//   ln(1 + b/((1+b) z^a))    = softplus(c - a t)
//   z^{-a}                   = exp(-a t)
struct LogParts {
    double t;       // ln z
    double c;       // ln(beta/(1+beta))
    double zma;     // z^{-alpha}
    double sp_at;   // softplus(alpha t)
    double sp_cat;  // softplus(c - alpha t)
};

LogParts log_parts(const Params& p, double z) {
    LogParts lp;
    lp.t = std::log(z);
    lp.c = std::log(p.beta()) - std::log1p(p.beta());
    lp.zma = std::exp(-p.alpha() * lp.t);
    lp.sp_at = softplus(p.alpha() * lp.t);
    lp.sp_cat = softplus(lp.c - p.alpha() * lp.t);
    return lp;
}

}  // namespace

double log_pdf(const Params& p, double z) {
    require_positive(z);
    const LogParts lp = log_parts(p, z);
    return std::log(p.alpha()) + 2.0 * std::log(p.beta()) + std::log(p.theta()) -
           std::log1p(p.beta()) + lp.sp_at - (2.0 * p.alpha() + 1.0) * lp.t -
           p.theta() * p.beta() * lp.zma + (p.theta() - 1.0) * lp.sp_cat;
}

double pdf(const Params& p, double z) { return std::exp(log_pdf(p, z)); }

double log_cdf(const Params& p, double z) {
    require_positive(z);
    const LogParts lp = log_parts(p, z);
    return p.theta() * (lp.sp_cat - p.beta() * lp.zma);
}

double cdf(const Params& p, double z) { return std::exp(log_cdf(p, z)); }

double survival(const Params& p, double z) { return -std::expm1(log_cdf(p, z)); }

double hazard(const Params& p, double z) {
    const double lcdf = log_cdf(p, z);
    const double s = -std::expm1(lcdf);
    if (s <= 0.0) {
        throw std::overflow_error("hazard: survival underflowed to zero");
    }
    return std::exp(log_pdf(p, z) - log1mexp(lcdf));
}

double reversed_hazard(const Params& p, double z) {
    const double lcdf = log_cdf(p, z);
    if (std::isinf(lcdf)) {
        throw std::overflow_error("reversed_hazard: cdf underflowed to zero");
    }
    return std::exp(log_pdf(p, z) - lcdf);
}

Eigen::ArrayXd log_pdf(const Params& p, const Eigen::Ref<const Eigen::ArrayXd>& z) {
    Eigen::ArrayXd out(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) out[i] = log_pdf(p, z[i]);
    return out;
}

Eigen::ArrayXd cdf(const Params& p, const Eigen::Ref<const Eigen::ArrayXd>& z) {
    Eigen::ArrayXd out(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) out[i] = cdf(p, z[i]);
    return out;
}

double quantile(const Params& p, Probability u) {
    const double b = p.beta();
    // ln(-x) for the W argument x = -u^{1/theta} (1+b) e^{-(1+b)}, formed in
    // logs so u^{1/theta} may underflow without harm.
    double lx = std::log(u.value()) / p.theta() + std::log1p(b) - (1.0 + b);
    if (lx > -1.0) {
        // Analytically impossible; permit only rounding overshoot past the
        // branch point (|x| beyond 1/e by <= 1e-14).
        if (lx <= -1.0 + 2.8e-14) {
            lx = -1.0;
        } else {
            throw std::runtime_error("quantile: Lambert W argument left [-1/e, 0)");
        }
    }
    const double w = lambert_w_minus1_from_log(lx);
    double s = -1.0 - b - w;  // = beta / Q(u)^alpha
    if (s <= 0.0) s = std::numeric_limits<double>::min();  // u at the top of the representable range
    return std::exp((std::log(b) - std::log(s)) / p.alpha());
}

double median(const Params& p) { return quantile(p, Probability(0.5)); }

Eigen::ArrayXd sample(const Params& p, Eigen::Index n, std::uint64_t seed) {
    if (n < 1) throw std::domain_error("sample: n must be >= 1");
    std::mt19937_64 gen(seed);
    Eigen::ArrayXd out(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        // uniform in (0,1) from the top 53 bits; never exactly 0 or 1
        const double u = (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
        out[i] = quantile(p, Probability(u));
    }
    return out;
}

namespace {

void require_moment_exists(const Params& p, int r) {
    if (r < 1) throw std::domain_error("raw_moment: order r must be a positive integer");
    if (!(p.alpha() > static_cast<double>(r))) {
        throw MomentError("moment of order " + std::to_string(r) +
                          " does not exist: requires alpha > r");
    }
}

// Quadrature with a relative-accuracy target: a loose pass to learn the
// scale, then a pass at an absolute tolerance matched to it.
double integrate_relative(const std::function<double(double)>& f, double rel_tol) {
    const QuadratureResult first = integrate_positive_halfline(f, 1e-6);
    const double target = std::clamp(rel_tol * std::abs(first.value), 1e-13, 1e-6);
    if (first.abs_error_estimate <= target) return first.value;
    return integrate_positive_halfline(f, target).value;
}

}  // namespace

double raw_moment(const Params& p, int r) {
    require_moment_exists(p, r);
    auto integrand = [&p, r](double z) {
        return std::exp(static_cast<double>(r) * std::log(z) + log_pdf(p, z));
    };
    return integrate_relative(integrand, 1e-10);
}

double raw_moment_series(const Params& p, int r, long max_terms, double tol) {
    require_moment_exists(p, r);
    if (max_terms < 1) throw std::domain_error("raw_moment_series: max_terms must be >= 1");
    const double a = p.alpha(), b = p.beta(), th = p.theta();
    const double ra = static_cast<double>(r) / a;
    const double log_scale = std::log(th * (b + 1.0));
    const double prefactor = std::exp(ra * std::log(b * th));

    double sum = 0.0;
    double coef = 1.0;  // C(theta-1, i) by recurrence
    for (long i = 0; i < max_terms; ++i) {
        if (i > 0) {
            coef *= (th - 1.0 - static_cast<double>(i - 1)) / static_cast<double>(i);
            if (coef == 0.0) return prefactor * sum;  // terminating (integer theta)
        }
        const double gam_arg = static_cast<double>(i) + 1.0 - ra;
        const double mag = std::exp(log_gamma(gam_arg) -
                                    (static_cast<double>(i) + 1.0) * log_scale) *
                           (static_cast<double>(i) + 1.0 - ra + th * b);
        const double term = coef * mag;
        if (!std::isfinite(term)) {
            throw SeriesError("raw_moment_series: terms overflowed (divergent expansion)", sum);
        }
        sum += term;
        if (std::abs(term) <= tol * std::abs(sum)) return prefactor * sum;
    }
    throw SeriesError("raw_moment_series: no convergence within " +
                          std::to_string(max_terms) + " terms",
                      prefactor * sum);
}

double mgf_formal(const Params& p, double t, long n_terms) {
    if (n_terms < 1) throw std::domain_error("mgf_formal: n_terms must be >= 1");
    if (static_cast<double>(n_terms) > std::ceil(p.alpha())) {
        throw MomentError("mgf_formal: requested a coefficient with n >= alpha");
    }
    if (t == 0.0) return 1.0;
    double sum = 1.0;  // n = 0 term: mu'_0 = 1 by normalization
    double tn_over_nfact = 1.0;
    for (long n = 1; n < n_terms; ++n) {
        tn_over_nfact *= t / static_cast<double>(n);
        sum += tn_over_nfact * raw_moment_series(p, static_cast<int>(n), 500, 1e-10);
    }
    return sum;
}

double renyi_entropy(const Params& p, double gamma) {
    if (!(gamma > 0.0) || gamma == 1.0) {
        throw std::domain_error("renyi_entropy: gamma must be positive and != 1");
    }
    if (!(gamma * (p.alpha() + 1.0) > 1.0)) {
        throw std::domain_error("renyi_entropy: integral diverges, needs gamma*(alpha+1) > 1");
    }
    auto integrand = [&p, gamma](double z) { return std::exp(gamma * log_pdf(p, z)); };
    const double integral = integrate_relative(integrand, 1e-10);
    return std::log(integral) / (1.0 - gamma);
}

double renyi_entropy_series(const Params& p, double gamma, long max_terms, double tol) {
    if (!(gamma > 0.0) || gamma == 1.0) {
        throw std::domain_error("renyi_entropy_series: gamma must be positive and != 1");
    }
    const double a = p.alpha(), b = p.beta(), th = p.theta();
    const double log_bb = std::log(b) - std::log1p(b);
    const double log_tbg = std::log(th * b * gamma);

    double sum = 0.0;
    double ci = 1.0;  // C(gamma*theta - gamma, i)
    bool i_done = false;
    for (long i = 0; i < max_terms && !i_done; ++i) {
        if (i > 0) {
            ci *= (gamma * th - gamma - static_cast<double>(i - 1)) / static_cast<double>(i);
            if (ci == 0.0) break;
        }
        double inner = 0.0;
        double cj = 1.0;  // C(gamma, j)
        for (long j = 0; j < max_terms; ++j) {
            if (j > 0) {
                cj *= (gamma - static_cast<double>(j - 1)) / static_cast<double>(j);
                if (cj == 0.0) break;
            }
            const double ex = static_cast<double>(i + j) + gamma + (gamma - 1.0) / a;
            const double term = cj * std::exp(log_gamma(ex) - ex * log_tbg);
            if (!std::isfinite(term)) {
                throw SeriesError("renyi_entropy_series: terms overflowed (divergent expansion)",
                                  sum);
            }
            inner += term;
            if (j > 0 && std::abs(term) <= tol * std::abs(inner)) break;
        }
        const double term_i = ci * std::exp(static_cast<double>(i) * log_bb) * inner;
        sum += term_i;
        if (i > 0 && std::abs(term_i) <= tol * std::abs(sum)) i_done = true;
    }
    if (!(sum > 0.0)) {
        throw SeriesError("renyi_entropy_series: nonpositive partial sum", sum);
    }
    const double log_val = (gamma - 1.0) * std::log(a) + 2.0 * gamma * std::log(b) +
                           gamma * std::log(th) - gamma * std::log1p(b) + std::log(sum);
    return log_val / (1.0 - gamma);
}

double order_stat_pdf(const Params& p, double z, int k, int n) {
    if (k < 1 || k > n) throw std::domain_error("order_stat_pdf: requires 1 <= k <= n");
    require_positive(z);
    const double lcoef = log_gamma(static_cast<double>(n) + 1.0) -
                         log_gamma(static_cast<double>(k)) -
                         log_gamma(static_cast<double>(n - k) + 1.0);
    const double lcdf = log_cdf(p, z);
    double acc = lcoef + log_pdf(p, z);
    if (k > 1) acc += static_cast<double>(k - 1) * lcdf;
    if (k < n) acc += static_cast<double>(n - k) * log1mexp(std::min(lcdf, -0.0));
    return std::exp(acc);
}

bool lr_order_check(const Params& p1, const Params& p2, std::span<const double> grid) {
    if (grid.size() < 3) throw std::invalid_argument("lr_order_check: grid needs >= 3 points");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw std::invalid_argument("lr_order_check: grid must be strictly increasing");
        }
    }
    double prev = log_pdf(p2, grid[0]) - log_pdf(p1, grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double cur = log_pdf(p2, grid[i]) - log_pdf(p1, grid[i]);
        const double slack = 1e-12 * std::max({1.0, std::abs(prev), std::abs(cur)});
        if (cur < prev - slack) return false;
        prev = cur;
    }
    return true;
}

}  // namespace eipld
