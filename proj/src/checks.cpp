#include "qjoin/checks.hpp"

#include "qjoin/corep.hpp"
#include "qjoin/group.hpp"
#include "qjoin/join.hpp"
#include "qjoin/suq2.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace qjoin {

namespace {

constexpr size_t kMaxFailures = 3;

void fail(CheckResult& r, Json detail) {
    r.passed = false;
    if (r.failures.size() < kMaxFailures) r.failures.push_back(std::move(detail));
}

CheckResult run_check(const std::string& name, int samples,
                      const std::function<void(CheckResult&)>& body) {
    CheckResult r;
    r.name = name;
    r.samples = samples;
    r.passed = true;
    try {
        body(r);
    } catch (const std::exception& e) {
        r.passed = false;
        if (r.failures.size() < kMaxFailures)
            r.failures.push_back(Json{{"error", e.what()}});
    }
    return r;
}

std::vector<BigRational> effective_grid(const SuiteConfig& cfg) {
    if (!cfg.grid.empty()) return cfg.grid;
    return parse_grid("0,1/2,1");
}

Json config_json(const SuiteConfig& cfg) {
    Json j = Json::object();
    j["samples"] = cfg.samples;
    j["seed"] = cfg.seed;
    j["confluence_trials"] = cfg.confluence_trials;
    j["confluence_max_len"] = cfg.confluence_max_len;
    j["q0"] = cfg.q0;
    j["n"] = cfg.n_bound;
    j["k"] = cfg.k_bound;
    j["threshold"] = cfg.threshold;
    j["grid"] = grid_string(effective_grid(cfg));
    j["precision"] = precision_name(cfg.precision);
    return j;
}

void validate_config(const SuiteConfig& cfg) {
    if (cfg.samples <= 0) throw std::invalid_argument("samples must be positive");
    if (cfg.confluence_trials <= 0 || cfg.confluence_max_len <= 0)
        throw std::invalid_argument("confluence settings must be positive");
    if (!(cfg.q0 > 0.0) || !(cfg.q0 < 1.0))
        throw std::invalid_argument("q0 must lie strictly between 0 and 1");
    if (cfg.n_bound < 1 || cfg.k_bound < 1)
        throw std::invalid_argument("window bounds must be at least 1");
    if (!(cfg.threshold > 0.0)) throw std::invalid_argument("threshold must be positive");
    if (!cfg.grid.empty() && cfg.grid.size() < 2)
        throw std::invalid_argument("grid needs at least the two endpoints");
}

// Returns the name of the first failing Hopf axiom for x, or "" if all hold.
std::string hopf_axiom_failure(const AlgebraPtr& alg, const Element& x) {
    Tensor dx = x.comultiply();
    if (dx.apply_delta(0) != dx.apply_delta(1)) return "coassociativity";
    if (dx.apply_counit(0).to_element() != x) return "left counit";
    if (dx.apply_counit(1).to_element() != x) return "right counit";
    Element unit_scaled = alg->one().scaled(x.counit());
    if (dx.apply_antipode(0).multiply_legs(0).to_element() != unit_scaled)
        return "left antipode";
    if (dx.apply_antipode(1).multiply_legs(0).to_element() != unit_scaled)
        return "right antipode";
    if (dx.star() != x.star().comultiply()) return "star comultiplication";
    if (x.star().counit() != x.counit()) return "star counit";
    return {};
}

Report hopf_suite(const SuiteConfig& cfg) {
    Report rep;
    rep.suite = "hopf";
    rep.config = config_json(cfg);
    auto alg = suq2_algebra();
    Rng rng(cfg.seed);

    rep.checks.push_back(run_check("hopf_axioms_deformed", cfg.samples, [&](CheckResult& r) {
        for (int i = 0; i < cfg.samples; ++i) {
            Element x = random_element(alg, 3, 6, rng);
            std::string axiom = hopf_axiom_failure(alg, x);
            if (!axiom.empty())
                fail(r, Json{{"sample", i},
                             {"axiom", axiom},
                             {"element", element_to_json(x)}});
        }
    }));

    int pairs = std::max(10, cfg.samples / 4);
    rep.checks.push_back(run_check("structure_maps_multiplicative", pairs, [&](CheckResult& r) {
        for (int i = 0; i < pairs; ++i) {
            Element x = random_element(alg, 2, 4, rng);
            Element y = random_element(alg, 2, 4, rng);
            bool ok = (x * y).comultiply() == x.comultiply() * y.comultiply() &&
                      (x * y).counit() == x.counit() * y.counit() &&
                      (x * y).antipode() == y.antipode() * x.antipode() &&
                      (x * y).star() == y.star() * x.star();
            if (!ok)
                fail(r, Json{{"sample", i},
                             {"left", element_to_json(x)},
                             {"right", element_to_json(y)}});
        }
    }));

    rep.checks.push_back(
        run_check("confluence_random_words", cfg.confluence_trials, [&](CheckResult& r) {
            ConfluenceReport c = normal_form_confluence_check(
                alg, cfg.confluence_trials, cfg.confluence_max_len, rng);
            r.samples = c.trials;
            if (!c.ok())
                fail(r, Json{{"divergences", c.divergences}, {"notes", c.notes}});
        }));

    rep.checks.push_back(run_check("confluence_rule_overlaps", 0, [&](CheckResult& r) {
        ConfluenceReport c = local_confluence_check(alg);
        r.samples = c.trials;
        if (!c.ok())
            fail(r, Json{{"divergences", c.divergences}, {"notes", c.notes}});
    }));

    rep.checks.push_back(run_check("group_algebras_are_hopf", 0, [&](CheckResult& r) {
        for (const auto& table : GroupTable::all_of_order_up_to(6)) {
            auto galg = group_function_algebra(table);
            if (local_confluence_check(galg).divergences != 0)
                fail(r, Json{{"group", table.name}, {"problem", "overlap divergence"}});
            for (int g = 0; g < table.order; ++g) {
                Element dg = galg->gen(static_cast<size_t>(g));
                std::string axiom = hopf_axiom_failure(galg, dg);
                if (dg * dg != dg || dg.star() != dg) axiom = "point mass projection";
                if (!axiom.empty())
                    fail(r, Json{{"group", table.name},
                                 {"axiom", axiom},
                                 {"element", element_to_json(dg)}});
                ++r.samples;
            }
            for (int i = 0; i < 5; ++i) {
                Element x = random_element(galg, 3, 3, rng);
                std::string axiom = hopf_axiom_failure(galg, x);
                if (!axiom.empty())
                    fail(r, Json{{"group", table.name},
                                 {"axiom", axiom},
                                 {"element", element_to_json(x)}});
                ++r.samples;
            }
        }
    }));

    rep.checks.push_back(run_check("classical_limit_commutators", cfg.samples, [&](CheckResult& r) {
        const BigRational one(1);
        for (int i = 0; i < cfg.samples; ++i) {
            Element x = alg->element(random_word(*alg, 4, rng), ScalarQ(1));
            Element y = alg->element(random_word(*alg, 4, rng), ScalarQ(1));
            Element comm = x * y - y * x;
            for (const auto& [w, c] : comm.terms()) {
                (void)w;
                if (c.eval(one) != BigRational(0)) {
                    fail(r, Json{{"sample", i},
                                 {"left", element_to_json(x)},
                                 {"right", element_to_json(y)},
                                 {"commutator", element_to_json(comm)}});
                    break;
                }
            }
        }
    }));

    return rep;
}

Report corep_suite(const SuiteConfig& cfg) {
    Report rep;
    rep.suite = "corep";
    rep.config = config_json(cfg);
    MatrixCorep u = fundamental_corep();
    Rng rng(cfg.seed);

    rep.checks.push_back(run_check("fundamental_is_unitary_corep", 0, [&](CheckResult& r) {
        CorepReport c = verify_corep(u);
        if (!c.ok()) fail(r, Json{{"first_failure", c.first_failure}});
        if (!u.multiply(u.adjoint()).is_identity() || !u.adjoint().multiply(u).is_identity())
            fail(r, Json{{"first_failure", "adjoint is not a two-sided inverse"}});
    }));

    rep.checks.push_back(run_check("antipode_is_starred_transpose", 0, [&](CheckResult& r) {
        for (size_t i = 0; i < u.dim(); ++i)
            for (size_t j = 0; j < u.dim(); ++j)
                if (u.at(i, j).antipode() != u.at(j, i).star())
                    fail(r, Json{{"row", i},
                                 {"col", j},
                                 {"entry", element_to_json(u.at(i, j))}});
    }));

    rep.checks.push_back(run_check("clutching_inverse", cfg.samples, [&](CheckResult& r) {
        InverseCheckReport c = clutching_inverse_check(u, rng, cfg.samples);
        r.samples = c.samples;
        if (!c.ok()) fail(r, Json{{"failures", c.failures}});
    }));

    int combos = std::max(10, cfg.samples / 10);
    rep.checks.push_back(run_check("cotensor_rows_and_combinations", combos, [&](CheckResult& r) {
        std::vector<std::vector<Element>> rows;
        for (size_t i = 0; i < u.dim(); ++i) {
            std::vector<Element> row;
            for (size_t j = 0; j < u.dim(); ++j) row.push_back(u.at(i, j));
            if (!cotensor_membership(row, u))
                fail(r, Json{{"row", i}, {"problem", "matrix row rejected"}});
            rows.push_back(std::move(row));
        }
        for (int s = 0; s < combos; ++s) {
            ScalarQ c0(rng.range(-3, 3)), c1(rng.range(-3, 3));
            std::vector<Element> combo = {
                rows[0][0].scaled(c0) + rows[1][0].scaled(c1),
                rows[0][1].scaled(c0) + rows[1][1].scaled(c1)};
            if (!cotensor_membership(combo, u))
                fail(r, Json{{"sample", s},
                             {"first_component", element_to_json(combo[0])}});
        }
        std::vector<Element> constant = {u.algebra()->one(), u.algebra()->zero()};
        if (cotensor_membership(constant, u))
            fail(r, Json{{"problem", "constant vector accepted"}});
    }));

    return rep;
}

Report join_suite(const SuiteConfig& cfg) {
    Report rep;
    rep.suite = "join";
    rep.config = config_json(cfg);
    auto alg = suq2_algebra();
    MatrixCorep u = fundamental_corep();
    Coaction delta = Coaction::comultiplication(alg);
    Rng rng(cfg.seed);

    auto cpath = [&](const Element& e, Side side) {
        return PathElement::constant(Tensor::simple({e}), side);
    };
    auto tpath = [&](Side side) { return PathElement::coordinate({alg}, side); };

    int small = std::max(10, cfg.samples / 20);
    rep.checks.push_back(run_check("join_closed_under_operations", small, [&](CheckResult& r) {
        for (int i = 0; i < small; ++i) {
            PathElement f = random_join_element(delta, 2, rng);
            PathElement g = random_join_element(delta, 2, rng);
            try {
                make_join_element(f * g, delta);
                make_join_element(f + g, delta);
            } catch (const BoundaryError& e) {
                fail(r, Json{{"sample", i}, {"error", e.what()}});
            }
        }
    }));

    rep.checks.push_back(run_check("coaction_preserves_boundaries", small, [&](CheckResult& r) {
        PathElement one2 = PathElement::constant(Tensor::unit({alg, alg}));
        PathElement unit = make_join_element(one2, delta);
        if (coact_delta_Delta(unit, delta) !=
            PathElement::constant(Tensor::unit({alg, alg, alg})))
            fail(r, Json{{"problem", "unit not fixed by the coaction"}});
        for (int i = 0; i < small; ++i) {
            try {
                coact_delta_Delta(random_join_element(delta, 2, rng), delta);
            } catch (const BoundaryError& e) {
                fail(r, Json{{"sample", i}, {"error", e.what()}});
            }
        }
    }));

    int triples = std::max(10, cfg.samples / 10);
    rep.checks.push_back(run_check("adjoint_module_laws", triples, [&](CheckResult& r) {
        for (int i = 0; i < triples; ++i) {
            Element x = random_element(alg, 2, 3, rng);
            Element y = random_element(alg, 2, 3, rng);
            PathElement f = random_cone_element(alg, Side::Right, 2, 2, rng);
            PathElement g = random_cone_element(alg, Side::Right, 2, 2, rng);
            if (adjoint_action(x * y, f) != adjoint_action(x, adjoint_action(y, f))) {
                fail(r, Json{{"sample", i},
                             {"law", "composition"},
                             {"left", element_to_json(x)},
                             {"right", element_to_json(y)}});
                continue;
            }
            PathElement lhs = adjoint_action(x, f * g);
            PathElement rhs = PathElement::zero({alg}, Side::Right);
            Tensor dx = x.comultiply();
            for (const auto& [legs, c] : dx.terms())
                rhs = rhs + adjoint_action(alg->element(legs[0], c), f) *
                                adjoint_action(alg->element(legs[1], ScalarQ(1)), g);
            if (lhs != rhs)
                fail(r, Json{{"sample", i},
                             {"law", "product"},
                             {"actor", element_to_json(x)}});
        }
    }));

    rep.checks.push_back(run_check("gluing_conditions_synchronized", cfg.samples, [&](CheckResult& r) {
        XEquivalenceReport c = verify_X_equivalence(u, rng, cfg.samples);
        r.samples = c.samples;
        if (!c.ok())
            fail(r, Json{{"inconsistent", c.inconsistent},
                         {"holding", c.holding},
                         {"failing", c.failing}});
    }));

    rep.checks.push_back(run_check("matched_pairs_glue", triples, [&](CheckResult& r) {
        for (int i = 0; i < triples; ++i) {
            std::vector<PathElement> b1 = {
                random_cone_element(alg, Side::Left, 2, 2, rng),
                random_cone_element(alg, Side::Left, 2, 2, rng)};
            std::vector<PathElement> b2 = matched_right_vector(u, b1);
            XPairReport matched = verify_X_pair(u, b1, b2);
            if (!matched.consistent() || !matched.x11) {
                fail(r, Json{{"sample", i}, {"problem", "matched pair rejected"}});
                continue;
            }
            // shift one component by a path that vanishes at the collapsed
            // end; the fiber values must now disagree
            std::vector<PathElement> broken = b2;
            broken[0] = broken[0] + (cpath(alg->one(), Side::Right) - tpath(Side::Right)) *
                                        cpath(suq2_b(), Side::Right);
            XPairReport off = verify_X_pair(u, b1, broken);
            if (!off.consistent() || off.x11)
                fail(r, Json{{"sample", i}, {"problem", "broken pair accepted"}});
        }
    }));

    rep.checks.push_back(run_check("milnor_idempotent_certificate", 0, [&](CheckResult& r) {
        IdempotentReport c = verify_milnor_idempotent(u.adjoint());
        if (!c.ok())
            fail(r, Json{{"unitary", c.unitary_ok},
                         {"idempotent", c.idempotent_ok},
                         {"endpoints", c.endpoints_ok}});
        MatrixCorep one(alg, {{alg->one()}});
        if (!verify_milnor_idempotent(one).ok())
            fail(r, Json{{"problem", "scalar unitary rejected"}});
    }));

    rep.checks.push_back(run_check("span_freeness", 0, [&](CheckResult& r) {
        auto z2 = group_function_algebra(GroupTable::cyclic(2));
        auto s3 = group_function_algebra(GroupTable::symmetric_3());
        FreenessReport f2 = ellwood_freeness_check(Coaction::comultiplication(z2));
        FreenessReport f6 = ellwood_freeness_check(Coaction::comultiplication(s3));
        if (!f2.free() || !f6.free())
            fail(r, Json{{"problem", "translation coaction not free"},
                         {"span_z2", f2.span_dim},
                         {"span_s3", f6.span_dim}});
        FreenessReport stuck = ellwood_freeness_check(Coaction::trivial(z2, z2));
        if (stuck.free())
            fail(r, Json{{"problem", "trivial coaction reported free"},
                         {"span", stuck.span_dim}});
    }));

    return rep;
}

Report idempotent_suite(const SuiteConfig& cfg) {
    Report rep;
    rep.suite = "idempotent";
    rep.config = config_json(cfg);
    auto alg = suq2_algebra();
    IdempotentReport cert = verify_milnor_idempotent(fundamental_corep().adjoint());

    rep.checks.push_back(run_check("unitarity_gate", 0, [&](CheckResult& r) {
        if (!cert.unitary_ok) fail(r, Json{{"problem", "conjugate matrix not unitary"}});
        MatrixCorep notu(alg, {{suq2_b()}});
        if (verify_milnor_idempotent(notu).unitary_ok)
            fail(r, Json{{"problem", "non-unitary matrix accepted"}});
    }));

    rep.checks.push_back(run_check("projection_equation", 0, [&](CheckResult& r) {
        if (!cert.idempotent_ok) fail(r, Json{{"problem", "p.p != p"}});
        if (!cert.selfadjoint_ok) fail(r, Json{{"problem", "p* != p"}});
    }));

    rep.checks.push_back(run_check("scalar_endpoints", 0, [&](CheckResult& r) {
        if (!cert.endpoints_ok)
            fail(r, Json{{"problem", "endpoint values are not scalar matrices"}});
        MatrixCorep one(alg, {{alg->one()}});
        IdempotentReport flat = verify_milnor_idempotent(one);
        if (!flat.ok()) fail(r, Json{{"problem", "scalar unitary certificate failed"}});
    }));

    return rep;
}

Report index_suite(const SuiteConfig& cfg) {
    Report rep;
    rep.suite = "index";
    rep.config = config_json(cfg);
    MatrixCorep u = fundamental_corep();

    int rn = std::min(cfg.n_bound, 8);
    int rk = std::min(cfg.k_bound, 8);
    rep.checks.push_back(run_check("weighted_shift_relations", 0, [&](CheckResult& r) {
        ResidualReport res = representation_residuals(cfg.q0, rn, rk);
        r.samples = static_cast<int>(res.interior_checked);
        if (!res.ok())
            fail(r, Json{{"max_interior", res.max_interior},
                         {"interior_checked", res.interior_checked}});
    }));

    auto index_check = [&](const std::string& name, const MatrixCorep& m, int want) {
        return run_check(name, 0, [&, want](CheckResult& r) {
            IndexResult res = compute_unitary_index(m, cfg.q0, cfg.n_bound, cfg.k_bound,
                                                    cfg.threshold, cfg.precision);
            if (res.index != want || !res.certified)
                fail(r, Json{{"index", res.index},
                             {"expected", want},
                             {"kernel", res.kernel},
                             {"cokernel", res.cokernel},
                             {"gap_ratio", finite_or_inf(res.gap_ratio)},
                             {"certified", res.certified}});
        });
    };
    rep.checks.push_back(index_check("adjoint_side_index", u.adjoint(), -1));
    rep.checks.push_back(index_check("forward_side_index", u, +1));
    MatrixCorep ident(u.algebra(),
                      {{u.algebra()->one(), u.algebra()->zero()},
                       {u.algebra()->zero(), u.algebra()->one()}});
    rep.checks.push_back(index_check("identity_index", ident, 0));

    rep.checks.push_back(run_check("window_stability", 0, [&](CheckResult& r) {
        std::vector<int> sizes = {cfg.n_bound, cfg.n_bound + 4, cfg.n_bound + 8};
        SweepReport sweep =
            convergence_sweep(u.adjoint(), cfg.q0, sizes, cfg.threshold, cfg.precision);
        r.samples = static_cast<int>(sweep.entries.size());
        if (!sweep.ok() || sweep.index != -1)
            fail(r, Json{{"stable", sweep.stable},
                         {"index", sweep.index},
                         {"note", sweep.note}});
    }));

    return rep;
}

Report classic_suite(const SuiteConfig& cfg) {
    Report rep;
    rep.suite = "classic";
    rep.config = config_json(cfg);
    std::vector<BigRational> grid = effective_grid(cfg);
    auto groups = GroupTable::all_of_order_up_to(6);
    const size_t layers = grid.size();

    rep.checks.push_back(run_check("translation_joins_free", 0, [&](CheckResult& r) {
        for (const auto& table : groups) {
            FiniteGSpace x = FiniteGSpace::regular(table);
            JoinModel j = build_join(x, x, grid);
            int o = table.order;
            int want = 2 * o + (static_cast<int>(layers) - 2) * o * o;
            if (!check_free(j) || j.classes != want)
                fail(r, Json{{"group", table.name},
                             {"classes", j.classes},
                             {"expected", want},
                             {"free", check_free(j)}});
            ++r.samples;
        }
    }));

    rep.checks.push_back(run_check("fixed_points_block_freeness", 0, [&](CheckResult& r) {
        GroupTable z2 = GroupTable::cyclic(2);
        FiniteGSpace still = FiniteGSpace::trivial(z2, 2);
        JoinModel j = build_join(still, still, grid);
        if (check_free(j)) fail(r, Json{{"problem", "fixed point join reported free"}});
    }));

    rep.checks.push_back(run_check("collapsed_model_layers", 0, [&](CheckResult& r) {
        for (const auto& table : groups) {
            FiniteGSpace x = FiniteGSpace::regular(table);
            JoinModel p = build_join_prime(x, grid);
            auto counts = p.layer_counts();
            int o = table.order;
            bool ok = counts.size() == layers && counts.front() == o && counts.back() == o;
            for (size_t l = 1; ok && l + 1 < layers; ++l) ok = counts[l] == o * o;
            if (!ok)
                fail(r, Json{{"group", table.name}, {"layer_counts", counts}});
            ++r.samples;
        }
    }));

    rep.checks.push_back(run_check("model_change_bijection", 0, [&](CheckResult& r) {
        for (const auto& table : groups) {
            Eq6Report e = check_map_eq6(FiniteGSpace::regular(table), grid);
            if (!e.ok())
                fail(r, Json{{"group", table.name},
                             {"well_defined", e.well_defined},
                             {"bijective", e.bijective},
                             {"equivariant", e.equivariant},
                             {"layers_match", e.layers_match}});
            ++r.samples;
        }
    }));

    rep.checks.push_back(run_check("sphere_census", 0, [&](CheckResult& r) {
        CensusReport c = iterated_join_sphere_census(3, grid);
        r.samples = static_cast<int>(c.stages.size());
        if (!c.all_free) fail(r, Json{{"problem", "a census stage is not free"}});
        if (grid.size() == 3) {
            std::vector<int> want = {2, 8, 26, 80};
            for (size_t s = 0; s < c.stages.size(); ++s)
                if (c.stages[s].total != want[s])
                    fail(r, Json{{"stage", s},
                                 {"total", c.stages[s].total},
                                 {"expected", want[s]}});
        }
    }));

    return rep;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"hopf",       "corep", "join",
                                                   "idempotent", "index", "classic"};
    return names;
}

Report run_suite(const std::string& selector, const SuiteConfig& cfg) {
    validate_config(cfg);
    if (selector == "hopf") return hopf_suite(cfg);
    if (selector == "corep") return corep_suite(cfg);
    if (selector == "join") return join_suite(cfg);
    if (selector == "idempotent") return idempotent_suite(cfg);
    if (selector == "index") return index_suite(cfg);
    if (selector == "classic") return classic_suite(cfg);
    if (selector == "all") {
        Report rep;
        rep.suite = "all";
        rep.config = config_json(cfg);
        for (const auto& name : suite_names()) {
            Report part = run_suite(name, cfg);
            for (auto& check : part.checks) {
                check.name = name + "." + check.name;
                rep.checks.push_back(std::move(check));
            }
        }
        return rep;
    }
    throw std::invalid_argument("unknown suite: " + selector);
}

}  // namespace qjoin
