#include "eipld/simulation.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "eipld/distribution.hpp"

namespace eipld {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t size, std::uint64_t rep) {
    constexpr auto mix = [](std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    };
    return mix(mix(mix(master) ^ size) ^ rep);
}

const SimulationCell& SimulationReport::cell(std::size_t size, int param_index) const {
    for (const auto& c : cells) {
        if (c.size == size && c.param_index == param_index) return c;
    }
    throw std::out_of_range("SimulationReport: no such cell");
}

SimulationReport run_study(const Params& truth, std::span<const std::size_t> sizes,
                           std::size_t reps, std::uint64_t master_seed,
                           const FitConfig& config) {
    if (reps < 2) throw std::domain_error("run_study: reps must be >= 2");
    if (sizes.empty()) throw std::domain_error("run_study: sizes must be nonempty");

    SimulationReport report;
    report.truth_alpha = truth.alpha();
    report.truth_beta = truth.beta();
    report.truth_theta = truth.theta();
    report.sizes.assign(sizes.begin(), sizes.end());
    report.replications = reps;
    report.master_seed = master_seed;

    // The study tracks the consistent root of the score equations, started
    // at the truth (see FitMode::local_root).
    FitConfig fit_config = config;
    fit_config.mode = FitMode::local_root;
    if (!fit_config.start_override) {
        Eigen::VectorXd start(3);
        start << truth.alpha(), truth.beta(), truth.theta();
        fit_config.start_override = start;
    }
    const double truth_vec[3] = {truth.alpha(), truth.beta(), truth.theta()};

    for (std::size_t size : sizes) {
        if (size < 4) throw std::domain_error("run_study: sizes must exceed the parameter count");
        std::vector<Eigen::Vector3d> estimates;
        estimates.reserve(reps);
        std::size_t failures = 0;
        for (std::size_t rep = 0; rep < reps; ++rep) {
            const std::uint64_t seed = derive_seed(master_seed, size, rep);
            const Eigen::ArrayXd draws =
                sample(truth, static_cast<Eigen::Index>(size), seed);
            Dataset data(std::vector<double>(draws.data(), draws.data() + draws.size()),
                         "simulated");
            bool ok = false;
            Eigen::Vector3d est;
            try {
                const FitResult fit = fit_mle(Family::EIPLD, data, fit_config);
                if (fit.converged) {
                    est = fit.estimates;
                    ok = true;
                }
            } catch (const std::exception&) {
                ok = false;
            }
            if (ok) {
                estimates.push_back(est);
            } else {
                ++failures;
            }
        }
        if (5 * failures > reps) {
            throw std::runtime_error("run_study: more than 20% of fits failed at n = " +
                                     std::to_string(size));
        }
        const double m = static_cast<double>(estimates.size());
        for (int param = 0; param < 3; ++param) {
            SimulationCell cell;
            cell.size = size;
            cell.param_index = param;
            cell.failures = failures;
            cell.successes = estimates.size();
            double mean = 0.0;
            for (const auto& e : estimates) mean += e[param];
            mean /= m;
            double ss = 0.0;
            for (const auto& e : estimates) ss += (e[param] - mean) * (e[param] - mean);
            cell.mean_estimate = mean;
            cell.bias = mean - truth_vec[param];
            cell.variance = ss / (m - 1.0);
            cell.mse = cell.bias * cell.bias + cell.variance;
            report.cells.push_back(cell);
        }
    }
    return report;
}

std::string report_text(const SimulationReport& report) {
    static const char* names[3] = {"alpha", "beta", "theta"};
    std::string out = "size\tparam\tmean\tbias\tvariance\tmse\tfailures\n";
    char buf[160];
    for (const auto& c : report.cells) {
        std::snprintf(buf, sizeof(buf), "%zu\t%s\t%.5g\t%.5g\t%.5g\t%.5g\t%zu\n", c.size,
                      names[c.param_index], c.mean_estimate, c.bias, c.variance, c.mse,
                      c.failures);
        out += buf;
    }
    return out;
}

nlohmann::json report_json(const SimulationReport& report) {
    static const char* names[3] = {"alpha", "beta", "theta"};
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : report.cells) {
        cells.push_back({{"size", c.size},
                         {"param", names[c.param_index]},
                         {"mean", c.mean_estimate},
                         {"bias", c.bias},
                         {"variance", c.variance},
                         {"mse", c.mse},
                         {"failures", c.failures},
                         {"successes", c.successes}});
    }
    return nlohmann::json{{"truth", {report.truth_alpha, report.truth_beta, report.truth_theta}},
                          {"sizes", report.sizes},
                          {"replications", report.replications},
                          {"master_seed", report.master_seed},
                          {"cells", cells}};
}

}  // namespace eipld
