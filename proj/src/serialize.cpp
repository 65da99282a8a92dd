#include "qjoin/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qjoin {

Json element_to_json(const Element& x) {
    Json terms = Json::object();
    for (const auto& [w, c] : x.terms()) terms[x.algebra()->word_str(w)] = c.str();
    return Json{{"algebra", x.algebra()->id()}, {"terms", std::move(terms)}};
}

Element element_from_json(const AlgebraPtr& alg, const Json& j) {
    if (j.at("algebra").get<std::string>() != alg->id())
        throw std::invalid_argument("element belongs to algebra '" +
                                    j.at("algebra").get<std::string>() + "', expected '" +
                                    alg->id() + "'");
    Element x = alg->zero();
    for (const auto& [word, coeff] : j.at("terms").items())
        x = x + alg->element(alg->parse_word(word), ScalarQ::parse(coeff.get<std::string>()));
    return x;
}

Json tensor_to_json(const Tensor& t) {
    Json legs = Json::array();
    for (const auto& alg : t.leg_algebras()) legs.push_back(alg->id());
    Json terms = Json::array();
    for (const auto& [key, c] : t.terms()) {
        Json words = Json::array();
        for (size_t i = 0; i < key.size(); ++i) words.push_back(t.leg_algebras()[i]->word_str(key[i]));
        terms.push_back(Json{{"words", std::move(words)}, {"coeff", c.str()}});
    }
    return Json{{"legs", std::move(legs)}, {"terms", std::move(terms)}};
}

Tensor tensor_from_json(const std::vector<AlgebraPtr>& legs, const Json& j) {
    const Json& ids = j.at("legs");
    if (ids.size() != legs.size()) throw std::invalid_argument("tensor leg count mismatch");
    for (size_t i = 0; i < legs.size(); ++i)
        if (ids[i].get<std::string>() != legs[i]->id())
            throw std::invalid_argument("tensor leg algebra mismatch");
    Tensor t = Tensor::zero(legs);
    for (const Json& term : j.at("terms")) {
        std::vector<Element> factors;
        const Json& words = term.at("words");
        for (size_t i = 0; i < legs.size(); ++i)
            factors.push_back(legs[i]->element(legs[i]->parse_word(words.at(i).get<std::string>()),
                                               ScalarQ(1)));
        t = t + Tensor::simple(factors, ScalarQ::parse(term.at("coeff").get<std::string>()));
    }
    return t;
}

Json corep_to_json(const MatrixCorep& u) {
    Json rows = Json::array();
    for (size_t i = 0; i < u.dim(); ++i) {
        Json row = Json::array();
        for (size_t j = 0; j < u.dim(); ++j) row.push_back(element_to_json(u.at(i, j)));
        rows.push_back(std::move(row));
    }
    return Json{{"algebra", u.algebra()->id()},
                {"dim", u.dim()},
                {"entries", std::move(rows)}};
}

MatrixCorep corep_from_json(const AlgebraPtr& alg, const Json& j) {
    size_t dim = j.at("dim").get<size_t>();
    std::vector<std::vector<Element>> entries;
    const Json& rows = j.at("entries");
    if (rows.size() != dim) throw std::invalid_argument("matrix row count mismatch");
    for (const Json& row : rows) {
        if (row.size() != dim) throw std::invalid_argument("matrix column count mismatch");
        std::vector<Element> out;
        for (const Json& cell : row) out.push_back(element_from_json(alg, cell));
        entries.push_back(std::move(out));
    }
    return MatrixCorep(alg, std::move(entries));
}

Json finite_or_inf(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

Json index_result_to_json(const IndexResult& r) {
    Json forward{{"kept", r.kept_forward},
                 {"dropped", r.dropped_forward},
                 {"any_dropped", r.any_dropped_forward}};
    Json adjoint{{"kept", r.kept_adjoint},
                 {"dropped", r.dropped_adjoint},
                 {"any_dropped", r.any_dropped_adjoint}};
    return Json{{"kernel", r.kernel},
                {"cokernel", r.cokernel},
                {"index", r.index},
                {"window", Json{{"n", r.n_bound}, {"k", r.k_bound}}},
                {"q0", r.q0},
                {"threshold", r.threshold},
                {"precision", r.precision},
                {"certificate", Json{{"forward", std::move(forward)},
                                     {"adjoint", std::move(adjoint)},
                                     {"gap_ratio", finite_or_inf(r.gap_ratio)},
                                     {"certified", r.certified}}}};
}

Json sweep_report_to_json(const SweepReport& s) {
    Json entries = Json::array();
    for (const auto& e : s.entries)
        entries.push_back(Json{{"size", e.size}, {"result", index_result_to_json(e.result)}});
    Json j{{"entries", std::move(entries)}, {"stable", s.stable}, {"index", s.index}};
    if (!s.note.empty()) j["note"] = s.note;
    return j;
}

std::string grid_string(const std::vector<BigRational>& grid) {
    std::ostringstream out;
    for (size_t i = 0; i < grid.size(); ++i) {
        if (i) out << ',';
        out << grid[i].str();
    }
    return out.str();
}

Json join_model_to_json(const JoinModel& m) {
    return Json{{"group", m.group.name},
                {"grid", grid_string(m.grid)},
                {"layer_counts", m.layer_counts()},
                {"classes", m.classes},
                {"free", check_free(m)}};
}

Json eq6_to_json(const Eq6Report& e) {
    return Json{{"well_defined", e.well_defined},
                {"bijective", e.bijective},
                {"equivariant", e.equivariant},
                {"layers_match", e.layers_match},
                {"classes_join", e.classes_join},
                {"classes_prime", e.classes_prime},
                {"passed", e.ok()}};
}

Json census_to_json(const CensusReport& c) {
    Json stages = Json::array();
    for (const auto& s : c.stages)
        stages.push_back(Json{{"stage", s.stage},
                              {"layer_counts", s.layer_counts},
                              {"total", s.total},
                              {"free", s.free}});
    return Json{{"stages", std::move(stages)}, {"all_free", c.all_free}};
}

bool Report::passed() const {
    if (checks.empty()) return false;
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

Json report_to_json(const Report& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json jc{{"name", c.name}, {"samples", c.samples}, {"passed", c.passed}};
        jc["failures"] = Json::array();
        for (const auto& f : c.failures) jc["failures"].push_back(f);
        checks.push_back(std::move(jc));
    }
    return Json{{"schema", kReportSchema}, {"tool", kToolVersion},   {"suite", r.suite},
                {"config", r.config},      {"checks", std::move(checks)}, {"passed", r.passed()}};
}

std::string report_text(const Report& r, double elapsed_seconds) {
    std::ostringstream out;
    int failed = 0;
    for (const auto& c : r.checks) {
        out << (c.passed ? "  ok   " : "  FAIL ") << c.name;
        if (c.samples > 0) out << " (" << c.samples << " samples)";
        out << "\n";
        if (!c.passed) {
            ++failed;
            if (!c.failures.empty()) out << "       first counterexample: " << c.failures.front().dump() << "\n";
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", elapsed_seconds);
    if (r.checks.empty())
        out << "no checks selected\n";
    else if (failed == 0)
        out << "OK (" << r.checks.size() << " checks) in " << buf << "s\n";
    else
        out << "FAILED (" << failed << " of " << r.checks.size() << " checks) in " << buf << "s\n";
    return out.str();
}

void write_json_atomic(const Json& j, const std::string& path) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
        out << j.dump(2) << "\n";
        if (!out.flush()) throw std::runtime_error("failed writing '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot move report into place at '" + path + "'");
    }
}

}  // namespace qjoin
