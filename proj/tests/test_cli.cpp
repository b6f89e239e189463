#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "eipld/dataset.hpp"

using namespace eipld;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    RunResult r;
    const std::string cmd = std::string(EIPLD_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

void write_file(const char* path, const std::string& body) {
    std::ofstream out(path);
    out << body;
}

}  // namespace

TEST_CASE("ingest: builtin dataset") {
    const Dataset d = ingest("builtin:repair-times");
    CHECK(d.n() == 40);
    CHECK(d.values()[0] == 0.50);
    CHECK(d.values()[39] == 24.50);
    CHECK(d.label() == "builtin:repair-times");
    double prev = 0.0;
    for (Eigen::Index i = 0; i < d.n(); ++i) {
        CHECK(d.values()[i] >= prev);
        prev = d.values()[i];
    }
}

TEST_CASE("ingest: files") {
    write_file("ingest_ok.tmp", "1.0\n2.0\n");
    const Dataset d = ingest("ingest_ok.tmp");
    CHECK(d.n() == 2);
    std::remove("ingest_ok.tmp");

    // header auto-detection on the first line only
    write_file("ingest_header.tmp", "repair_hours\n3.5\n1.25\n");
    const Dataset h = ingest("ingest_header.tmp");
    CHECK(h.n() == 2);
    CHECK(h.values()[0] == 1.25);
    std::remove("ingest_header.tmp");

    write_file("ingest_neg.tmp", "1.0\n-1.0\n");
    CHECK_THROWS_WITH_AS(ingest("ingest_neg.tmp"),
                         doctest::Contains("nonpositive"), std::runtime_error);
    std::remove("ingest_neg.tmp");

    write_file("ingest_bad.tmp", "1.0\ntwo\n");
    CHECK_THROWS_WITH_AS(ingest("ingest_bad.tmp"), doctest::Contains("line 2"),
                         std::runtime_error);
    std::remove("ingest_bad.tmp");

    write_file("ingest_empty.tmp", "");
    CHECK_THROWS_AS(ingest("ingest_empty.tmp"), std::runtime_error);
    std::remove("ingest_empty.tmp");

    CHECK_THROWS_AS(ingest("no_such_file_anywhere.dat"), std::runtime_error);
}

TEST_CASE("cli: quantile") {
    const auto r = run_cli("quantile --u 0.3045044 --alpha 1 --beta 1 --theta 2");
    CHECK(r.exit_code == 0);
    CHECK(std::abs(std::stod(r.out) - 1.0) <= 1e-6);
}

TEST_CASE("cli: sample determinism") {
    const auto a = run_cli("sample --n 5 --alpha 1 --beta 1 --theta 1 --seed 7");
    const auto b = run_cli("sample --n 5 --alpha 1 --beta 1 --theta 1 --seed 7");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    const auto c = run_cli("sample --n 5 --alpha 1 --beta 1 --theta 1 --seed 8");
    CHECK(c.out != a.out);
}

TEST_CASE("cli: fit json document") {
    const auto r = run_cli("fit --data builtin:repair-times --family eipld --out json");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j["log_lik"].get<double>() - (-89.45)) <= 0.05);
    CHECK(std::abs(j["aic"].get<double>() - 184.91) <= 0.10);
    CHECK(j["converged"].get<bool>());
    // full-precision round trip
    const auto j2 = nlohmann::json::parse(j.dump());
    CHECK(j2["log_lik"].get<double>() == j["log_lik"].get<double>());
    CHECK(j2["estimates"]["alpha"].get<double>() == j["estimates"]["alpha"].get<double>());
}

TEST_CASE("cli: compare ranks the embedded dataset") {
    const auto r = run_cli("compare --data builtin:repair-times --families all --out json");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.size() == 7);
    CHECK(j[0]["family"] == "EIPLD");
}

TEST_CASE("cli: curve output") {
    const auto r = run_cli("curve --what pdf --alpha 1 --beta 1 --theta 1 --zmin 0.5 --zmax 2 --points 4");
    CHECK(r.exit_code == 0);
    std::istringstream is(r.out);
    double z, v;
    int rows = 0;
    while (is >> z >> v) {
        CHECK(v >= 0.0);
        ++rows;
    }
    CHECK(rows == 4);
}

TEST_CASE("cli: exit codes") {
    CHECK(run_cli("no-such-subcommand").exit_code == 1);
    CHECK(run_cli("fit --bogus-flag 3").exit_code == 1);
    // numeric failure: probability outside (0,1)
    CHECK(run_cli("quantile --u 2.0 --alpha 1 --beta 1 --theta 1").exit_code == 2);
    // numeric failure: nonpositive data value
    write_file("cli_neg.tmp", "1.0\n-2.0\n");
    CHECK(run_cli("fit --data cli_neg.tmp").exit_code == 2);
    std::remove("cli_neg.tmp");
}

TEST_CASE("cli: fit accepts a key-value config file") {
    write_file("cli_cfg.tmp", "restarts = 4\nmax_iters = 500\nci_level = 0.9\n");
    const auto r = run_cli("fit --data builtin:repair-times --config cli_cfg.tmp --out json");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["n_restarts_used"] == 4);
    std::remove("cli_cfg.tmp");

    write_file("cli_cfg_bad.tmp", "mystery = 1\n");
    CHECK(run_cli("fit --data builtin:repair-times --config cli_cfg_bad.tmp").exit_code == 2);
    std::remove("cli_cfg_bad.tmp");
}

TEST_CASE("cli: simulate reduced study") {
    const auto r = run_cli("simulate --alpha 2 --beta 1 --theta 1.2 --sizes 25 --reps 5 --seed 3 --out json");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["cells"].size() == 3);
    CHECK(j["replications"] == 5);
}
