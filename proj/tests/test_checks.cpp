#include "qjoin/checks.hpp"

#include "doctest.h"

using namespace qjoin;

namespace {

SuiteConfig fast_config() {
    SuiteConfig cfg;
    cfg.samples = 12;
    cfg.confluence_trials = 40;
    cfg.confluence_max_len = 6;
    cfg.n_bound = 6;
    cfg.k_bound = 6;
    return cfg;
}

}  // namespace

TEST_CASE("each named suite runs green on a small budget") {
    SuiteConfig cfg = fast_config();
    for (const auto& name : suite_names()) {
        CAPTURE(name);
        Report rep = run_suite(name, cfg);
        CHECK(rep.suite == name);
        CHECK(rep.checks.size() >= 3);
        CHECK(rep.passed());
        for (const auto& c : rep.checks) {
            CAPTURE(c.name);
            CHECK(c.passed);
        }
    }
}

TEST_CASE("the combined suite prefixes check names and echoes its config") {
    SuiteConfig cfg = fast_config();
    Report rep = run_suite("all", cfg);
    CHECK(rep.suite == "all");
    CHECK(rep.passed());
    CHECK(rep.config["seed"] == 7);
    CHECK(rep.config["grid"] == "0,1/2,1");
    bool saw_hopf = false, saw_classic = false;
    for (const auto& c : rep.checks) {
        if (c.name.rfind("hopf.", 0) == 0) saw_hopf = true;
        if (c.name.rfind("classic.", 0) == 0) saw_classic = true;
    }
    CHECK(saw_hopf);
    CHECK(saw_classic);
}

TEST_CASE("suite reports are reproducible") {
    SuiteConfig cfg = fast_config();
    std::string once = report_to_json(run_suite("corep", cfg)).dump(2);
    std::string twice = report_to_json(run_suite("corep", cfg)).dump(2);
    CHECK(once == twice);
}

TEST_CASE("bad selectors and configs are rejected") {
    SuiteConfig cfg = fast_config();
    CHECK_THROWS_AS(run_suite("nope", cfg), std::invalid_argument);

    SuiteConfig zero = cfg;
    zero.samples = 0;
    CHECK_THROWS_AS(run_suite("hopf", zero), std::invalid_argument);

    SuiteConfig limit = cfg;
    limit.q0 = 1.0;
    CHECK_THROWS_AS(run_suite("index", limit), std::invalid_argument);

    SuiteConfig neg = cfg;
    neg.threshold = -1.0;
    CHECK_THROWS_AS(run_suite("index", neg), std::invalid_argument);

    SuiteConfig shortgrid = cfg;
    shortgrid.grid = {BigRational(0)};
    CHECK_THROWS_AS(run_suite("classic", shortgrid), std::invalid_argument);
}
