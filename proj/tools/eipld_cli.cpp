// Command-line front end: fitting, model comparison, sampling, quantiles,
// curve emission, and the Monte-Carlo study.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "eipld/dataset.hpp"
#include "eipld/distribution.hpp"
#include "eipld/estimation.hpp"
#include "eipld/model_selection.hpp"
#include "eipld/simulation.hpp"

namespace {

using nlohmann::json;

struct CurveArgs {
    std::string what = "pdf";
    double alpha = 1.0, beta = 1.0, theta = 1.0;
    double zmin = 0.01, zmax = 10.0;
    long points = 200;
};

json fit_to_json(const eipld::FitResult& fit, const eipld::Dataset& data) {
    const double neg = -fit.log_lik;
    json out{
        {"family", std::string(eipld::family_tag(fit.family))},
        {"log_lik", fit.log_lik},
        {"aic", eipld::aic(neg, fit.estimates.size())},
        {"bic", eipld::bic(neg, fit.estimates.size(), static_cast<double>(data.n()))},
        {"ks", eipld::ks_statistic(fit.family, fit.estimates, data)},
        {"converged", fit.converged},
        {"n", data.n()},
        {"n_restarts_used", fit.n_restarts_used},
        {"ci_level", fit.ci_level},
        {"info_positive_definite", fit.info.positive_definite},
    };
    const auto names = eipld::family_param_names(fit.family);
    json est = json::object(), score = json::object();
    for (Eigen::Index i = 0; i < fit.estimates.size(); ++i) {
        est[names[static_cast<std::size_t>(i)]] = fit.estimates[i];
        score[names[static_cast<std::size_t>(i)]] = fit.score_at_mle[i];
    }
    out["estimates"] = est;
    out["score"] = score;
    if (!fit.ci.empty()) {
        json cis = json::object();
        for (std::size_t i = 0; i < fit.ci.size(); ++i) {
            cis[names[i]] = json{{"lower", fit.ci[i].lower},
                                 {"upper", fit.ci[i].upper},
                                 {"floored_at_zero", fit.ci[i].floored_at_zero}};
        }
        out["ci"] = cis;
    }
    return out;
}

void print_fit_text(const eipld::FitResult& fit, const eipld::Dataset& data) {
    const double neg = -fit.log_lik;
    std::printf("family      %s\n", std::string(eipld::family_tag(fit.family)).c_str());
    std::printf("n           %ld\n", static_cast<long>(data.n()));
    const auto names = eipld::family_param_names(fit.family);
    for (Eigen::Index i = 0; i < fit.estimates.size(); ++i) {
        std::printf("%-11s %.5g", names[static_cast<std::size_t>(i)].c_str(), fit.estimates[i]);
        if (!fit.ci.empty()) {
            std::printf("   [%.5g, %.5g]%s", fit.ci[static_cast<std::size_t>(i)].lower,
                        fit.ci[static_cast<std::size_t>(i)].upper,
                        fit.ci[static_cast<std::size_t>(i)].floored_at_zero ? " (floored)" : "");
        }
        std::printf("\n");
    }
    std::printf("log_lik     %.5f\n", fit.log_lik);
    std::printf("aic         %.5f\n", eipld::aic(neg, fit.estimates.size()));
    std::printf("bic         %.5f\n",
                eipld::bic(neg, fit.estimates.size(), static_cast<double>(data.n())));
    std::printf("ks          %.5f\n", eipld::ks_statistic(fit.family, fit.estimates, data));
    std::printf("converged   %s\n", fit.converged ? "true" : "false");
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
    std::vector<std::size_t> sizes;
    std::string token;
    for (char ch : text + ",") {
        if (ch == ',') {
            if (!token.empty()) sizes.push_back(std::stoul(token));
            token.clear();
        } else {
            token += ch;
        }
    }
    return sizes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exponentiated inverse power Lindley distribution toolkit"};
    app.require_subcommand(1);

    std::string data_arg = "builtin:repair-times";
    std::string family_arg = "eipld";
    std::string out_arg = "text";
    std::string families_arg = "all";
    std::string config_path;
    double ci_level = 0.95;

    auto* fit_cmd = app.add_subcommand("fit", "maximum-likelihood fit of one family");
    fit_cmd->add_option("--data", data_arg, "data file (one value per line) or builtin:repair-times");
    fit_cmd->add_option("--family", family_arg, "family tag (eipld, epld, pld, gld, ld, ee, wd, ild, ipld)");
    fit_cmd->add_option("--ci-level", ci_level, "confidence level")->check(CLI::Range(1e-6, 1.0 - 1e-6));
    fit_cmd->add_option("--out", out_arg, "text or json")->check(CLI::IsMember({"text", "json"}));
    fit_cmd->add_option("--config", config_path, "key-value fit configuration file");

    auto* compare_cmd = app.add_subcommand("compare", "fit several families and rank by AIC");
    compare_cmd->add_option("--data", data_arg, "data file or builtin:repair-times");
    compare_cmd->add_option("--families", families_arg, "'all' or comma list of tags");
    compare_cmd->add_option("--out", out_arg, "text or json")->check(CLI::IsMember({"text", "json"}));
    compare_cmd->add_option("--config", config_path, "key-value fit configuration file");

    double alpha = 1.0, beta = 1.0, theta = 1.0, u_arg = 0.5;
    long n_arg = 10;
    std::uint64_t seed = 1;
    auto* sample_cmd = app.add_subcommand("sample", "inverse-transform draws");
    sample_cmd->add_option("--n", n_arg, "number of draws")->required();
    sample_cmd->add_option("--alpha", alpha)->required();
    sample_cmd->add_option("--beta", beta)->required();
    sample_cmd->add_option("--theta", theta)->required();
    sample_cmd->add_option("--seed", seed, "64-bit seed");

    auto* quantile_cmd = app.add_subcommand("quantile", "inverse distribution function");
    quantile_cmd->add_option("--u", u_arg, "probability in (0,1)")->required();
    quantile_cmd->add_option("--alpha", alpha)->required();
    quantile_cmd->add_option("--beta", beta)->required();
    quantile_cmd->add_option("--theta", theta)->required();

    CurveArgs curve;
    auto* curve_cmd = app.add_subcommand("curve", "two-column curve data for plotting");
    curve_cmd->add_option("--what", curve.what)->check(CLI::IsMember({"pdf", "cdf", "hazard", "revhazard"}));
    curve_cmd->add_option("--alpha", curve.alpha)->required();
    curve_cmd->add_option("--beta", curve.beta)->required();
    curve_cmd->add_option("--theta", curve.theta)->required();
    curve_cmd->add_option("--zmin", curve.zmin);
    curve_cmd->add_option("--zmax", curve.zmax);
    curve_cmd->add_option("--points", curve.points)->check(CLI::Range(2L, 10000000L));

    std::string sizes_arg = "25,50,100,200,300,500";
    long reps = 500;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo bias/variance/MSE study");
    sim_cmd->add_option("--alpha", alpha)->required();
    sim_cmd->add_option("--beta", beta)->required();
    sim_cmd->add_option("--theta", theta)->required();
    sim_cmd->add_option("--sizes", sizes_arg, "comma list of sample sizes");
    sim_cmd->add_option("--reps", reps, "replications per size");
    sim_cmd->add_option("--seed", seed, "master seed");
    sim_cmd->add_option("--out", out_arg, "text or json")->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        eipld::FitConfig config;
        if (!config_path.empty()) config = eipld::FitConfig::from_file(config_path);

        if (fit_cmd->parsed()) {
            const eipld::Dataset data = eipld::ingest(data_arg);
            if (fit_cmd->count("--ci-level") > 0) config.ci_level = ci_level;
            const eipld::FitResult fit =
                eipld::fit_mle(eipld::family_from_tag(family_arg), data, config);
            if (out_arg == "json") {
                std::cout << fit_to_json(fit, data).dump(2) << "\n";
            } else {
                print_fit_text(fit, data);
            }
        } else if (compare_cmd->parsed()) {
            const eipld::Dataset data = eipld::ingest(data_arg);
            std::vector<eipld::Family> families;
            if (families_arg == "all") {
                families.assign(std::begin(eipld::kComparisonFamilies),
                                std::end(eipld::kComparisonFamilies));
            } else {
                std::string token;
                for (char ch : families_arg + ",") {
                    if (ch == ',') {
                        if (!token.empty()) families.push_back(eipld::family_from_tag(token));
                        token.clear();
                    } else {
                        token += ch;
                    }
                }
            }
            const auto rows = eipld::compare(data, families, config);
            if (out_arg == "json") {
                std::cout << eipld::comparison_json(rows).dump(2) << "\n";
            } else {
                std::cout << eipld::comparison_text(rows);
            }
        } else if (sample_cmd->parsed()) {
            const Eigen::ArrayXd draws =
                eipld::sample(eipld::Params(alpha, beta, theta), n_arg, seed);
            for (Eigen::Index i = 0; i < draws.size(); ++i) std::printf("%.17g\n", draws[i]);
        } else if (quantile_cmd->parsed()) {
            const double q = eipld::quantile(eipld::Params(alpha, beta, theta),
                                             eipld::Probability(u_arg));
            std::printf("%.17g\n", q);
        } else if (curve_cmd->parsed()) {
            const eipld::Params p(curve.alpha, curve.beta, curve.theta);
            const double step = (curve.zmax - curve.zmin) / static_cast<double>(curve.points - 1);
            for (long i = 0; i < curve.points; ++i) {
                const double z = curve.zmin + step * static_cast<double>(i);
                double value;
                if (curve.what == "pdf") value = eipld::pdf(p, z);
                else if (curve.what == "cdf") value = eipld::cdf(p, z);
                else if (curve.what == "hazard") value = eipld::hazard(p, z);
                else value = eipld::reversed_hazard(p, z);
                std::printf("%.17g %.17g\n", z, value);
            }
        } else if (sim_cmd->parsed()) {
            const auto sizes = parse_sizes(sizes_arg);
            const auto report = eipld::run_study(eipld::Params(alpha, beta, theta), sizes,
                                                 static_cast<std::size_t>(reps), seed, config);
            if (out_arg == "json") {
                std::cout << eipld::report_json(report).dump(2) << "\n";
            } else {
                std::cout << eipld::report_text(report);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
