#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "eipld/dataset.hpp"
#include "eipld/families.hpp"
#include "eipld/special.hpp"

using namespace eipld;

namespace {

GenericParams vec(std::initializer_list<double> vals) {
    GenericParams v(static_cast<Eigen::Index>(vals.size()));
    Eigen::Index i = 0;
    for (double x : vals) v[i++] = x;
    return v;
}

// parameter points spanning each family's box, used for normalization
std::vector<GenericParams> span_points(Family f) {
    switch (family_n_params(f)) {
        case 1: return {vec({0.4}), vec({1.0}), vec({4.0})};
        case 2: return {vec({0.6, 0.5}), vec({1.0, 1.0}), vec({2.5, 3.0})};
        default: return {vec({0.8, 0.6, 0.5}), vec({1.0, 1.0, 1.0}), vec({1.8, 2.5, 3.0})};
    }
}

constexpr Family kAll[] = {Family::EIPLD, Family::EPLD, Family::PLD,
                           Family::GLD,   Family::LD,   Family::EE,
                           Family::WD,    Family::ILD,  Family::IPLD};

}  // namespace

TEST_CASE("family metadata") {
    CHECK(family_n_params(Family::LD) == 1);
    CHECK(family_n_params(Family::ILD) == 1);
    CHECK(family_n_params(Family::PLD) == 2);
    CHECK(family_n_params(Family::GLD) == 2);
    CHECK(family_n_params(Family::EE) == 2);
    CHECK(family_n_params(Family::WD) == 2);
    CHECK(family_n_params(Family::IPLD) == 2);
    CHECK(family_n_params(Family::EIPLD) == 3);
    CHECK(family_n_params(Family::EPLD) == 3);
    CHECK(family_from_tag("eipld") == Family::EIPLD);
    CHECK(family_from_tag("WD") == Family::WD);
    CHECK_THROWS_AS(family_from_tag("nope"), std::invalid_argument);
    CHECK(family_tag(Family::GLD) == "GLD");
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(family_log_pdf(Family::LD, vec({1.0, 2.0}), 1.0), std::domain_error);
    CHECK_THROWS_AS(family_log_pdf(Family::WD, vec({1.0}), 1.0), std::domain_error);
    CHECK_THROWS_AS(family_log_pdf(Family::WD, vec({1.0, -1.0}), 1.0), std::domain_error);
    CHECK_THROWS_AS(family_log_pdf(Family::WD, vec({1.0, 1.0}), 0.0), std::domain_error);
}

TEST_CASE("unit-value log densities") {
    // Lindley at beta=1, z=1: (1/2) * 2 * e^-1
    CHECK(family_log_pdf(Family::LD, vec({1.0}), 1.0) == doctest::Approx(-1.0).epsilon(1e-14));
    // inverse Lindley at beta=1, z=1: e^-1
    CHECK(family_log_pdf(Family::ILD, vec({1.0}), 1.0) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("WD log-likelihood at the reference fitted parameters") {
    const Dataset& data = builtin_repair_times();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < data.n(); ++i) {
        acc += family_log_pdf(Family::WD, vec({0.9604, 0.2688}), data.values()[i]);
    }
    CHECK(acc == doctest::Approx(-95.5114).epsilon(0.0006));  // within +-0.05
    CHECK(acc == doctest::Approx(-95.51136219019443).epsilon(1e-10));
}

TEST_CASE("EE with unit power reduces to the exponential distribution") {
    const double b = 0.7;
    for (double z : {0.2, 1.0, 3.0, 10.0}) {
        CHECK(family_cdf(Family::EE, vec({1.0, b}), z) ==
              doctest::Approx(1.0 - std::exp(-b * z)).epsilon(1e-14));
    }
}

TEST_CASE("IPLD equals the theta=1 EIPLD") {
    for (double z : {0.3, 1.0, 2.5, 9.0}) {
        CHECK(family_cdf(Family::IPLD, vec({1.3, 2.0}), z) ==
              doctest::Approx(family_cdf(Family::EIPLD, vec({1.3, 2.0, 1.0}), z))
                  .epsilon(1e-14));
    }
}

TEST_CASE("every family: cdf limits") {
    for (Family f : kAll) {
        const auto p = span_points(f)[1];
        CHECK(family_cdf(f, p, 1e8) > 1.0 - 1e-4);
        CHECK(family_cdf(f, p, 1e-8) < 1e-3);
        double prev = 0.0;
        for (double z : {0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
            const double c = family_cdf(f, p, z);
            CHECK(c >= prev - 1e-15);
            CHECK(c <= 1.0);
            prev = c;
        }
    }
}

TEST_CASE("every family: density normalizes at three parameter points") {
    for (Family f : kAll) {
        for (const auto& p : span_points(f)) {
            auto r = integrate_positive_halfline(
                [f, &p](double z) { return std::exp(family_log_pdf(f, p, z)); }, 1e-8);
            CHECK(std::abs(r.value - 1.0) <= 1e-7);
        }
    }
}

TEST_CASE("every family: numerical cdf derivative matches the density") {
    for (Family f : kAll) {
        const auto p = span_points(f)[1];
        for (double z : {0.4, 0.8, 1.5, 3.0, 6.0}) {
            const double g = std::exp(family_log_pdf(f, p, z));
            if (g < 1e-7) continue;
            const double h = 1e-2 * z;
            const double d = (8.0 * (family_cdf(f, p, z + h) - family_cdf(f, p, z - h)) -
                              (family_cdf(f, p, z + 2 * h) - family_cdf(f, p, z - 2 * h))) /
                             (12.0 * h);
            CHECK(d == doctest::Approx(g).epsilon(1e-6));
        }
    }
}
