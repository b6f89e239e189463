#pragma once

#include <Eigen/Core>
#include <string>
#include <string_view>

#include "eipld/distribution.hpp"

// Reference implementations of the distribution families used by the
// model-comparison harness. Parameterizations (x > 0 throughout):
//
//   LD    beta            f = b^2/(1+b) (1+x) e^{-bx}
//   PLD   alpha,beta      f = a b^2/(1+b) (1+x^a) x^{a-1} e^{-b x^a}
//   GLD   alpha,beta      F = [1 - (1 + bx/(1+b)) e^{-bx}]^a
//   EPLD  alpha,beta,th   F = [1 - (1 + bx^a/(1+b)) e^{-b x^a}]^th
//   EE    alpha,beta      F = (1 - e^{-bx})^a
//   WD    alpha,beta      F = 1 - e^{-b x^a}           (alpha = shape)
//   ILD   beta            f = b^2/(1+b) ((1+x)/x^3) e^{-b/x}
//   IPLD  alpha,beta      the theta = 1 sub-model of EIPLD
//   EIPLD alpha,beta,th   see distribution.hpp

namespace eipld {

enum class Family { EIPLD, EPLD, PLD, GLD, LD, EE, WD, ILD, IPLD };

/// The families compared in the reference study (all but ILD/IPLD, which
/// stay available by explicit name).
inline constexpr Family kComparisonFamilies[] = {
    Family::EIPLD, Family::EPLD, Family::PLD, Family::GLD,
    Family::LD,    Family::EE,   Family::WD};

int family_n_params(Family f);
std::string_view family_tag(Family f);
Family family_from_tag(std::string_view tag);

/// Parameter names in the order GenericParams stores them.
std::vector<std::string> family_param_names(Family f);

/// Ordered positive parameter vector for one family.
using GenericParams = Eigen::VectorXd;

/// Throws std::domain_error unless params has the family's length with all
/// entries positive.
void validate_params(Family f, const GenericParams& params);

double family_log_pdf(Family f, const GenericParams& params, double z);
double family_cdf(Family f, const GenericParams& params, double z);

}  // namespace eipld
