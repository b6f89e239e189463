#pragma once

#include <span>
#include <string>
#include <vector>

#include "eipld/estimation.hpp"

#include <json.hpp>

namespace eipld {

/// One row of the goodness-of-fit comparison table.
struct ModelScore {
    Family family = Family::EIPLD;
    int q = 0;
    double neg_log_lik = 0.0;
    double aic = 0.0;
    double bic = 0.0;
    double ks = 0.0;
    FitResult fit;
    std::string note;  // documented-discrepancy or failure note, empty otherwise
    bool fit_failed = false;
};

/// Akaike information criterion, -2 logL + 2q (natural log throughout).
double aic(double neg_log_lik, long q);

/// Bayesian information criterion, -2 logL + q ln(n).
double bic(double neg_log_lik, long q, double n);

/// One-sample Kolmogorov-Smirnov statistic against the family's fitted CDF:
///   D_n = max_i max( i/n - F(z_(i)), F(z_(i)) - (i-1)/n ).
/// Reported as a statistic with estimated parameters (no Lilliefors
/// correction), matching how such comparison tables are usually built.
double ks_statistic(Family f, const GenericParams& params, const Dataset& data);

/// Fits every family and assembles the table, sorted ascending by AIC
/// (ties break by the canonical family order). Per-family fit failures are
/// recorded in the row and flagged, never fatal.
std::vector<ModelScore> compare(const Dataset& data, std::span<const Family> families,
                                const FitConfig& config = {});

/// Delimiter-separated rendering (tab columns, 5 significant digits).
std::string comparison_text(const std::vector<ModelScore>& rows);

/// Structured rendering: list of {family, q, neg_log_lik, aic, bic, ks,
/// params, converged, note}.
nlohmann::json comparison_json(const std::vector<ModelScore>& rows);

}  // namespace eipld
