#include "eipld/families.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace eipld {

int family_n_params(Family f) {
    switch (f) {
        case Family::LD:
        case Family::ILD:
            return 1;
        case Family::PLD:
        case Family::GLD:
        case Family::EE:
        case Family::WD:
        case Family::IPLD:
            return 2;
        case Family::EIPLD:
        case Family::EPLD:
            return 3;
    }
    throw std::logic_error("family_n_params: unknown family");
}

std::string_view family_tag(Family f) {
    switch (f) {
        case Family::EIPLD: return "EIPLD";
        case Family::EPLD: return "EPLD";
        case Family::PLD: return "PLD";
        case Family::GLD: return "GLD";
        case Family::LD: return "LD";
        case Family::EE: return "EE";
        case Family::WD: return "WD";
        case Family::ILD: return "ILD";
        case Family::IPLD: return "IPLD";
    }
    throw std::logic_error("family_tag: unknown family");
}

Family family_from_tag(std::string_view tag) {
    std::string up(tag);
    for (auto& ch : up) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    for (Family f : {Family::EIPLD, Family::EPLD, Family::PLD, Family::GLD, Family::LD,
                     Family::EE, Family::WD, Family::ILD, Family::IPLD}) {
        if (up == family_tag(f)) return f;
    }
    throw std::invalid_argument("unknown family tag '" + std::string(tag) + "'");
}

std::vector<std::string> family_param_names(Family f) {
    switch (family_n_params(f)) {
        case 1: return {"beta"};
        case 2: return {"alpha", "beta"};
        default: return {"alpha", "beta", "theta"};
    }
}

void validate_params(Family f, const GenericParams& params) {
    if (params.size() != family_n_params(f)) {
        throw std::domain_error(std::string("params for ") + std::string(family_tag(f)) +
                                " must have length " + std::to_string(family_n_params(f)));
    }
    for (Eigen::Index i = 0; i < params.size(); ++i) {
        if (!(params[i] > 0.0)) {
            throw std::domain_error("family parameters must be positive");
        }
    }
}

namespace {

void require_positive(double z) {
    if (!(z > 0.0)) throw std::domain_error("family evaluation: z must be positive");
}

// log of the Lindley-type base CDF deficiency: m = ln[(1 + c x) e^{-b x}]
// with c = b/(1+b); always <= 0 on x > 0, so log F = log1mexp(m).
double lindley_log_one_minus_cdf_core(double b, double x) {
    return std::log1p(b * x / (1.0 + b)) - b * x;
}

double ld_log_pdf(double b, double x) {
    return 2.0 * std::log(b) - std::log1p(b) + std::log1p(x) - b * x;
}

double pld_log_pdf(double a, double b, double x) {
    const double t = std::log(x);
    return std::log(a) + 2.0 * std::log(b) - std::log1p(b) + softplus(a * t) +
           (a - 1.0) * t - b * std::exp(a * t);
}

double pld_log_cdf(double a, double b, double x) {
    const double s = b * std::exp(a * std::log(x));
    if (std::isinf(s)) return 0.0;  // F = 1 to double precision
    return log1mexp(std::min(std::log1p(s / (1.0 + b)) - s, -0.0));
}

}  // namespace

double family_log_pdf(Family f, const GenericParams& params, double z) {
    validate_params(f, params);
    require_positive(z);
    switch (f) {
        case Family::EIPLD:
            return log_pdf(Params(params[0], params[1], params[2]), z);
        case Family::IPLD:
            return log_pdf(Params(params[0], params[1], 1.0), z);
        case Family::ILD:
            return log_pdf(Params(1.0, params[0], 1.0), z);
        case Family::LD:
            return ld_log_pdf(params[0], z);
        case Family::PLD:
            return pld_log_pdf(params[0], params[1], z);
        case Family::GLD: {
            const double a = params[0], b = params[1];
            return std::log(a) + ld_log_pdf(b, z) +
                   (a - 1.0) * log1mexp(std::min(lindley_log_one_minus_cdf_core(b, z), -0.0));
        }
        case Family::EPLD: {
            const double a = params[0], b = params[1], th = params[2];
            return std::log(th) + pld_log_pdf(a, b, z) + (th - 1.0) * pld_log_cdf(a, b, z);
        }
        case Family::EE: {
            const double a = params[0], b = params[1];
            return std::log(a) + std::log(b) - b * z + (a - 1.0) * log1mexp(-b * z);
        }
        case Family::WD: {
            const double a = params[0], b = params[1];
            const double t = std::log(z);
            return std::log(a) + std::log(b) + (a - 1.0) * t - b * std::exp(a * t);
        }
    }
    throw std::logic_error("family_log_pdf: unknown family");
}

double family_cdf(Family f, const GenericParams& params, double z) {
    validate_params(f, params);
    require_positive(z);
    switch (f) {
        case Family::EIPLD:
            return cdf(Params(params[0], params[1], params[2]), z);
        case Family::IPLD:
            return cdf(Params(params[0], params[1], 1.0), z);
        case Family::ILD:
            return cdf(Params(1.0, params[0], 1.0), z);
        case Family::LD:
            return -std::expm1(lindley_log_one_minus_cdf_core(params[0], z));
        case Family::PLD:
            return std::exp(pld_log_cdf(params[0], params[1], z));
        case Family::GLD:
            return std::exp(params[0] *
                            log1mexp(std::min(lindley_log_one_minus_cdf_core(params[1], z), -0.0)));
        case Family::EPLD:
            return std::exp(params[2] * pld_log_cdf(params[0], params[1], z));
        case Family::EE:
            return std::exp(params[0] * log1mexp(-params[1] * z));
        case Family::WD:
            return -std::expm1(-params[1] * std::exp(params[0] * std::log(z)));
    }
    throw std::logic_error("family_cdf: unknown family");
}

}  // namespace eipld
