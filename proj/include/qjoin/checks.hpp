#pragma once

#include "qjoin/classic.hpp"
#include "qjoin/index.hpp"
#include "qjoin/serialize.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qjoin {

/// Knobs shared by all check suites.  Defaults are sized so `check all`
/// finishes in well under a minute while still exercising every code path.
struct SuiteConfig {
    int samples = 200;
    uint64_t seed = 7;
    int confluence_trials = 500;
    int confluence_max_len = 8;
    double q0 = 0.5;
    int n_bound = 12;
    int k_bound = 12;
    double threshold = 1e-8;
    std::vector<BigRational> grid;  // empty means {0, 1/2, 1}
    Precision precision = Precision::Double;
};

/// The runnable suites in their canonical order ("all" runs them in this
/// order and concatenates the checks).
const std::vector<std::string>& suite_names();

/// Run one suite (or "all") and collect per-check verdicts with serialized
/// counterexamples.  Unknown selectors throw std::invalid_argument.
Report run_suite(const std::string& selector, const SuiteConfig& cfg);

}  // namespace qjoin
