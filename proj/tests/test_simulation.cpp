#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "eipld/simulation.hpp"

using namespace eipld;

TEST_CASE("seed derivation is deterministic and spreads") {
    CHECK(derive_seed(1, 25, 0) == derive_seed(1, 25, 0));
    std::set<std::uint64_t> seen;
    for (std::uint64_t m : {1ull, 2ull}) {
        for (std::uint64_t s : {25ull, 500ull}) {
            for (std::uint64_t r = 0; r < 50; ++r) seen.insert(derive_seed(m, s, r));
        }
    }
    CHECK(seen.size() == 200);  // no collisions across cells
}

TEST_CASE("run_study input validation") {
    const Params truth(2, 1, 1.2);
    const std::size_t sizes[] = {25};
    CHECK_THROWS_AS(run_study(truth, sizes, 1, 1, FitConfig{}), std::domain_error);
    const std::vector<std::size_t> empty;
    CHECK_THROWS_AS(run_study(truth, empty, 10, 1, FitConfig{}), std::domain_error);
}

TEST_CASE("smallest valid study constructs with (m-1)-denominator variance") {
    const Params truth(2, 1, 1.2);
    const std::size_t sizes[] = {30};
    const auto rep = run_study(truth, sizes, 2, 99, FitConfig{});
    REQUIRE(rep.cells.size() == 3);
    for (const auto& c : rep.cells) {
        CHECK(c.successes + c.failures == 2);
        CHECK(std::isfinite(c.variance));
        CHECK(c.variance >= 0.0);
        // mse = bias^2 + variance by construction
        CHECK(c.mse == c.bias * c.bias + c.variance);
    }
}

TEST_CASE("reports are deterministic under a fixed master seed") {
    const Params truth(2, 1.5, 0.8);
    const std::size_t sizes[] = {25, 50};
    const auto r1 = run_study(truth, sizes, 20, 123456, FitConfig{});
    const auto r2 = run_study(truth, sizes, 20, 123456, FitConfig{});
    REQUIRE(r1.cells.size() == r2.cells.size());
    for (std::size_t i = 0; i < r1.cells.size(); ++i) {
        CHECK(r1.cells[i].mean_estimate == r2.cells[i].mean_estimate);
        CHECK(r1.cells[i].bias == r2.cells[i].bias);
        CHECK(r1.cells[i].variance == r2.cells[i].variance);
        CHECK(r1.cells[i].mse == r2.cells[i].mse);
    }
    // rows exist for every (size, param) pair
    for (std::size_t s : {25, 50}) {
        for (int k = 0; k < 3; ++k) CHECK_NOTHROW(r1.cell(s, k));
    }
    CHECK_THROWS_AS(r1.cell(99, 0), std::out_of_range);
}

TEST_CASE("reduced-profile study shows the decreasing MSE trend") {
    const Params truth(2, 1, 1.2);
    const std::size_t sizes[] = {25, 200};
    const auto rep = run_study(truth, sizes, 100, 20250808ull, FitConfig{});
    for (int param = 0; param < 3; ++param) {
        const auto& small = rep.cell(25, param);
        const auto& large = rep.cell(200, param);
        CHECK(large.mse < small.mse);
        CHECK(5 * small.failures <= 100);
        CHECK(5 * large.failures <= 100);
    }
}

TEST_CASE("report emitters") {
    const Params truth(2, 1, 1.2);
    const std::size_t sizes[] = {30};
    const auto rep = run_study(truth, sizes, 5, 7, FitConfig{});
    const std::string text = report_text(rep);
    CHECK(text.find("size\tparam\tmean\tbias\tvariance\tmse\tfailures") == 0);
    CHECK(text.find("alpha") != std::string::npos);
    CHECK(text.find("theta") != std::string::npos);

    const auto j = report_json(rep);
    CHECK(j["replications"] == 5);
    CHECK(j["master_seed"] == 7);
    CHECK(j["cells"].size() == 3);
    const auto reparsed = nlohmann::json::parse(j.dump());
    CHECK(reparsed["cells"][0]["mse"].get<double>() == j["cells"][0]["mse"].get<double>());
}
