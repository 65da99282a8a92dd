#include "qjoin/corep.hpp"
#include "qjoin/suq2.hpp"

#include "doctest.h"

using namespace qjoin;

TEST_CASE("the defining matrix is a unitary corepresentation") {
    MatrixCorep u = fundamental_corep();
    CHECK(u.dim() == 2);
    CorepReport report = verify_corep(u);
    CHECK(report.comultiplication_ok);
    CHECK(report.counit_ok);
    CHECK(report.unitary_ok);
    CHECK(report.ok());
}

TEST_CASE("entrywise antipode is the starred transpose") {
    MatrixCorep u = fundamental_corep();
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) CHECK(u.at(i, j).antipode() == u.at(j, i).star());
}

TEST_CASE("a diagonal matrix with repeated group-like entry is not a corep") {
    auto alg = suq2_algebra();
    std::vector<std::vector<Element>> m = {
        {suq2_a(), alg->zero()},
        {alg->zero(), suq2_a()},
    };
    MatrixCorep bad(alg, std::move(m));
    CorepReport report = verify_corep(bad);
    // Delta(a) has an off-diagonal contribution, so the matrix
    // comultiplication rule fails even though the counit rule holds.
    CHECK_FALSE(report.comultiplication_ok);
    CHECK(report.counit_ok);
    CHECK_FALSE(report.ok());
    CHECK(!report.first_failure.empty());
}

TEST_CASE("clutching map composes to the identity both ways") {
    MatrixCorep u = fundamental_corep();
    Rng rng(21);
    InverseCheckReport report = clutching_inverse_check(u, rng, 25);
    CHECK(report.matrix_identities_ok);
    CHECK(report.samples == 25);
    CHECK(report.failures == 0);
}

TEST_CASE("clutching map acts on basis vectors by antipode rows") {
    MatrixCorep u = fundamental_corep();
    ModuleMatrix chi = clutching_map(u);
    auto alg = u.algebra();
    std::vector<Element> e0 = {alg->one(), alg->zero()};
    auto image = chi.apply(e0);
    CHECK(image[0] == u.at(0, 0).antipode());
    CHECK(image[1] == u.at(0, 1).antipode());
}

TEST_CASE("cotensor membership accepts coacted rows and rejects constants") {
    MatrixCorep u = fundamental_corep();
    auto alg = u.algebra();
    // Each row of the matrix itself satisfies the comultiplication rule,
    // so rows are cotensor elements.
    for (size_t i = 0; i < 2; ++i) {
        std::vector<Element> row = {u.at(i, 0), u.at(i, 1)};
        CHECK(cotensor_membership(row, u));
    }
    std::vector<Element> constant = {alg->one(), alg->zero()};
    CHECK_FALSE(cotensor_membership(constant, u));
}

TEST_CASE("cotensor membership is linear") {
    MatrixCorep u = fundamental_corep();
    std::vector<Element> r0 = {u.at(0, 0), u.at(0, 1)};
    std::vector<Element> r1 = {u.at(1, 0), u.at(1, 1)};
    const ScalarQ c = ScalarQ::q_power(2) - ScalarQ(3);
    std::vector<Element> combo = {r0[0] + r1[0].scaled(c), r0[1] + r1[1].scaled(c)};
    CHECK(cotensor_membership(combo, u));
}

TEST_CASE("scalar vectors are cotensor elements for the trivial corep") {
    auto alg = suq2_algebra();
    std::vector<std::vector<Element>> m = {{alg->one()}};
    MatrixCorep trivial(alg, std::move(m));
    CHECK(verify_corep(trivial).ok());
    std::vector<Element> x = {alg->one().scaled(ScalarQ(5))};
    CHECK(cotensor_membership(x, trivial));
}
