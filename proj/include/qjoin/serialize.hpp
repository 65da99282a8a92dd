#pragma once

#include "qjoin/algebra.hpp"
#include "qjoin/classic.hpp"
#include "qjoin/corep.hpp"
#include "qjoin/index.hpp"

#include "json.hpp"

namespace qjoin {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "qjoin 0.1.0";
inline constexpr const char* kReportSchema = "qjoin-report/1";

/// Element as {"algebra": id, "terms": {word: coefficient}} with words in
/// generator-dot notation ("a.b*", "1") and coefficients as the canonical
/// fraction strings of ScalarQ.
Json element_to_json(const Element& x);
Element element_from_json(const AlgebraPtr& alg, const Json& j);

/// Tensor as {"legs": [algebra ids], "terms": [{"words": [...], "coeff": s}]},
/// terms in the canonical key order.
Json tensor_to_json(const Tensor& t);
Tensor tensor_from_json(const std::vector<AlgebraPtr>& legs, const Json& j);

/// Matrix as {"algebra": id, "dim": n, "entries": row-major nested arrays}.
Json corep_to_json(const MatrixCorep& u);
MatrixCorep corep_from_json(const AlgebraPtr& alg, const Json& j);

/// Finite double for JSON output; infinities become the string "inf" (JSON
/// numbers cannot carry them and null would lose the sign of the statement).
Json finite_or_inf(double v);

/// Index verdict with its spectral-gap certificate.
Json index_result_to_json(const IndexResult& r);
Json sweep_report_to_json(const SweepReport& s);

/// Quotient-model summaries for the finite (classical) side.
Json join_model_to_json(const JoinModel& m);
Json eq6_to_json(const Eq6Report& e);
Json census_to_json(const CensusReport& c);

/// Grid back to its comma-separated exact form.
std::string grid_string(const std::vector<BigRational>& grid);

struct CheckResult {
    std::string name;
    int samples = 0;  // 0 for single deterministic checks
    bool passed = false;
    std::vector<Json> failures;  // first counterexample(s), serialized
};

struct Report {
    std::string suite;
    Json config = Json::object();
    std::vector<CheckResult> checks;
    bool passed() const;
};

Json report_to_json(const Report& r);

/// Human-readable one-screen summary; the wall-clock time goes only here,
/// never into the JSON (reports must be byte-identical across reruns).
std::string report_text(const Report& r, double elapsed_seconds);

/// Writes via a sibling temp file and rename, so readers never observe a
/// half-written report. Throws std::runtime_error when the path is unwritable.
void write_json_atomic(const Json& j, const std::string& path);

}  // namespace qjoin
