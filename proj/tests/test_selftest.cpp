#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>

#include "dualgeo/error.hpp"
#include "dualgeo/json_io.hpp"
#include "dualgeo/selftest.hpp"

using namespace dualgeo;

TEST_CASE("selftest passes with default options") {
    const SelftestReport report = run_selftest();
    CHECK(report.all_passed);
    CHECK_EQ(report.seed, SelftestOptions{}.seed);
    CHECK_GE(report.suites.size(), 25);
    std::set<std::string> names;
    for (const SuiteResult& suite : report.suites) {
        INFO(suite.name << ": " << suite.failures << "/" << suite.trials);
        CHECK(suite.passed);
        CHECK_EQ(suite.failures, 0);
        CHECK_GT(suite.trials, 0);
        names.insert(suite.name);
    }
    CHECK_EQ(names.size(), report.suites.size()); // suite names are unique
}

TEST_CASE("selftest verdict is stable across seeds") {
    for (const uint64_t seed : {1ULL, 42ULL, 0xdeadbeefULL}) {
        SelftestOptions options;
        options.seed = seed;
        const SelftestReport report = run_selftest(options);
        CHECK_EQ(report.seed, seed);
        CHECK(report.all_passed);
    }
}

TEST_CASE("selftest catches a corrupted incidence transform") {
    SelftestOptions options;
    options.corrupt_incidence = true;
    const SelftestReport report = run_selftest(options);
    CHECK_FALSE(report.all_passed);
    int broken = 0;
    for (const SuiteResult& suite : report.suites) {
        if (suite.name == "incidence-residual") {
            CHECK_FALSE(suite.passed);
            CHECK_EQ(suite.failures, suite.trials); // every trial sees the corruption
            ++broken;
        } else {
            CHECK(suite.passed);
        }
    }
    CHECK_EQ(broken, 1);
}

TEST_CASE("selftest rejects a non-positive scale") {
    SelftestOptions options;
    options.scale = 0;
    CHECK_THROWS_AS(run_selftest(options), ValidationError);
}

TEST_CASE("selftest report serializes with per-suite counts") {
    SelftestOptions options;
    options.seed = 7;
    const Json j = to_json(run_selftest(options));
    CHECK_EQ(j.at("seed").get<uint64_t>(), 7);
    CHECK(j.at("all_passed").get<bool>());
    REQUIRE(j.at("suites").is_array());
    CHECK_GE(j.at("suites").size(), 25);
    for (const Json& suite : j.at("suites")) {
        CHECK(suite.at("name").is_string());
        CHECK_GT(suite.at("trials").get<int>(), 0);
        CHECK_EQ(suite.at("failures").get<int>(), 0);
        CHECK(suite.at("passed").get<bool>());
    }
}
