#include "qjoin/index.hpp"
#include "qjoin/suq2.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>

using namespace qjoin;

namespace {

std::vector<double> sorted_sigma(const SparseRect<double>& m) {
    auto s = singular_values(m);
    std::sort(s.begin(), s.end());
    return s;
}

void check_close(const std::vector<double>& got, const std::vector<double>& want, double tol = 1e-12) {
    REQUIRE(got.size() == want.size());
    for (size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) <= tol);
}

MatrixCorep identity_corep() {
    auto alg = suq2_algebra();
    return MatrixCorep(alg, {{alg->one()}});
}

}  // namespace

TEST_CASE("singular values of small sparse blocks") {
    SUBCASE("diagonal") {
        SparseRect<double> m(2, 2);
        m.add(0, 0, 3.0);
        m.add(1, 1, 4.0);
        check_close(sorted_sigma(m), {3.0, 4.0});
    }
    SUBCASE("shear couples the columns") {
        SparseRect<double> m(2, 2);
        m.add(0, 0, 1.0);
        m.add(0, 1, 1.0);
        m.add(1, 1, 1.0);
        // singular values squared are (3 +- sqrt 5) / 2
        check_close(sorted_sigma(m), {std::sqrt((3 - std::sqrt(5.0)) / 2), std::sqrt((3 + std::sqrt(5.0)) / 2)});
    }
    SUBCASE("rank-deficient chain keeps one value per column") {
        SparseRect<double> m(2, 3);
        m.add(0, 0, 1.0);
        m.add(1, 1, 1.0);
        m.add(0, 2, 1.0);
        m.add(1, 2, 1.0);
        check_close(sorted_sigma(m), {0.0, 1.0, std::sqrt(3.0)});
    }
    SUBCASE("explicit zero column") {
        SparseRect<double> m(3, 2);
        m.add(2, 1, 5.0);
        check_close(sorted_sigma(m), {0.0, 5.0});
    }
    SUBCASE("multiply and transpose compose") {
        SparseRect<double> a(2, 2), b(2, 2);
        a.add(0, 0, 1.0);
        a.add(1, 0, 2.0);
        a.add(0, 1, 3.0);
        b.add(0, 0, 1.0);
        b.add(1, 0, 1.0);
        auto p = a.multiply(b);  // first column of p = a*(1,1) = (4,2)
        REQUIRE(p.col[0].size() == 2);
        CHECK(p.col[0][0].second == doctest::Approx(4.0));
        CHECK(p.col[0][1].second == doctest::Approx(2.0));
        auto at = a.transposed();
        REQUIRE(at.col[0].size() == 2);
    }
}

TEST_CASE("the lattice representation acts by weighted shifts") {
    const double q = 0.5;
    auto t = represent<double>(suq2_a(), q, 3, 2);
    // window (n, k), n in [0,3], k in [-2,2], column index 5n + (k+2)
    auto idx = [](int n, int k) { return static_cast<size_t>(5 * n + (k + 2)); };

    // the lowering generator kills the bottom row
    CHECK(t.forward.col[idx(0, 0)].empty());
    // and shifts n = 1 down with weight sqrt(1 - q^2)
    REQUIRE(t.forward.col[idx(1, 0)].size() == 1);
    CHECK(t.forward.col[idx(1, 0)][0].first == idx(0, 0));
    CHECK(t.forward.col[idx(1, 0)][0].second == doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));

    // the adjoint side clips the raising direction at the window edge
    CHECK(t.adjoint_side.col[idx(3, 0)].empty());

    // torus shift with weight q^n
    auto tb = represent<double>(suq2_b(), q, 3, 2);
    REQUIRE(tb.forward.col[idx(2, -1)].size() == 1);
    CHECK(tb.forward.col[idx(2, -1)][0].first == idx(2, 0));
    CHECK(tb.forward.col[idx(2, -1)][0].second == doctest::Approx(0.25).epsilon(1e-12));
    // clipping at the torus edge
    CHECK(tb.forward.col[idx(1, 2)].empty());

    // a two-letter word composes the shifts: (a b) e_{1,0} = q sqrt(1-q^2) e_{0,1}
    auto tw = represent<double>(suq2_a() * suq2_b(), q, 3, 2);
    REQUIRE(tw.forward.col[idx(1, 0)].size() == 1);
    CHECK(tw.forward.col[idx(1, 0)][0].first == idx(0, 1));
    CHECK(tw.forward.col[idx(1, 0)][0].second == doctest::Approx(0.5 * std::sqrt(0.75)).epsilon(1e-12));

    SUBCASE("bad arguments are rejected") {
        CHECK_THROWS_AS(represent<double>(suq2_a(), 1.0, 3, 2), std::invalid_argument);
        CHECK_THROWS_AS(represent<double>(suq2_a(), 0.0, 3, 2), std::invalid_argument);
        CHECK_THROWS_AS(represent<double>(suq2_a(), 0.5, 0, 2), std::invalid_argument);
    }
}

TEST_CASE("defining relation residuals vanish in the interior") {
    auto rep = representation_residuals(0.5, 8, 8);
    CHECK(rep.interior_checked > 0);
    CHECK(rep.max_interior <= 1e-12);
    CHECK(rep.ok());
    // truncation damage is confined to the flagged boundary rows
    CHECK(rep.boundary_flagged > 0);
    CHECK(rep.max_boundary > 0.1);

    auto rep2 = representation_residuals(0.7, 6, 6);
    CHECK(rep2.ok());
}

TEST_CASE("compression of the defining unitary at the smallest window") {
    const double q = 0.5;
    MatrixCorep ustar = fundamental_corep().adjoint();
    auto t = fredholm_compression<double>(ustar, q, 1, 1);
    // domain: n in {0,1}, k = -1, two components
    CHECK(t.domain.size() == 4);
    CHECK(t.codomain.size() == 2 * 3 * 2);  // padded window n in [0,2], k in [-2,-1]

    // forward columns, by hand: the projection clips only the torus raise at
    // k = -1, leaving column norms sqrt(1-q^2), sqrt(1-q^4), 1, 1
    check_close(sorted_sigma(t.forward),
                {std::sqrt(0.75), std::sqrt(1 - 1.0 / 16), 1.0, 1.0});
    // adjoint side: the (n,k) = (0,-1) column of the starred matrix dies
    // entirely (lowering weight 0, torus raise clipped), the rest survive
    check_close(sorted_sigma(t.adjoint_side), {0.0, std::sqrt(0.75), 1.0, 1.0});

    auto r = numerical_index(t, 1e-8);
    CHECK(r.kernel == 0);
    CHECK(r.cokernel == 1);
    CHECK(r.index == -1);
    CHECK(r.certified);
}

TEST_CASE("index certificates for the defining unitary and its adjoint") {
    MatrixCorep u = fundamental_corep();
    MatrixCorep ustar = u.adjoint();

    auto r = compute_unitary_index(ustar, 0.5, 20, 20, 1e-8, Precision::Double);
    CHECK(r.index == -1);
    CHECK(r.kernel == 0);
    CHECK(r.cokernel == 1);
    CHECK(r.certified);
    CHECK(r.gap_ratio >= 1e3);
    CHECK(r.precision == "double");

    auto rf = compute_unitary_index(u, 0.5, 20, 20, 1e-8, Precision::Double);
    CHECK(rf.index == 1);
    CHECK(rf.kernel == 1);
    CHECK(rf.cokernel == 0);

    auto rid = compute_unitary_index(identity_corep(), 0.5, 10, 10, 1e-8, Precision::Double);
    CHECK(rid.index == 0);
    CHECK(rid.kernel == 0);
    CHECK(rid.cokernel == 0);
    CHECK_FALSE(rid.any_dropped_forward);
    CHECK_FALSE(rid.any_dropped_adjoint);

    SUBCASE("threshold insensitivity across four decades") {
        for (double th : {1e-10, 1e-8, 1e-6}) {
            auto rt = compute_unitary_index(ustar, 0.5, 10, 10, th, Precision::Double);
            CHECK(rt.index == -1);
        }
    }
    SUBCASE("deformation parameter stability") {
        for (double q0 : {0.3, 0.7}) {
            auto rq = compute_unitary_index(ustar, q0, 12, 12, 1e-8, Precision::Double);
            CHECK(rq.index == -1);
        }
    }
}

TEST_CASE("convergence sweep certifies a stable integer") {
    MatrixCorep ustar = fundamental_corep().adjoint();
    auto rep = convergence_sweep(ustar, 0.5, {10, 12, 14}, 1e-8, Precision::Double);
    REQUIRE(rep.entries.size() == 3);
    CHECK(rep.stable);
    CHECK(rep.ok());
    CHECK(rep.index == -1);
    for (const auto& e : rep.entries) CHECK(e.result.certified);

    CHECK_THROWS_AS(convergence_sweep(ustar, 0.5, {10, 12}, 1e-8, Precision::Double),
                    std::invalid_argument);
    CHECK_THROWS_AS(convergence_sweep(ustar, 0.5, {12, 10, 14}, 1e-8, Precision::Double),
                    std::invalid_argument);
}

TEST_CASE("precision selection") {
    CHECK(parse_precision("double") == Precision::Double);
    CHECK(parse_precision("longdouble") == Precision::LongDouble);
    CHECK(parse_precision("quad") == Precision::Quad);
    CHECK_THROWS_AS(parse_precision("float128"), std::invalid_argument);
    CHECK(precision_name(Precision::Quad) == std::string("quad"));

    setenv("QJOIN_PRECISION", "quad", 1);
    CHECK(precision_from_env() == Precision::Quad);
    setenv("QJOIN_PRECISION", "bogus", 1);
    CHECK_THROWS_AS(precision_from_env(), std::invalid_argument);
    unsetenv("QJOIN_PRECISION");
    CHECK(precision_from_env() == Precision::Double);

    // the quad path reproduces the double-precision integer
    auto r = compute_unitary_index(fundamental_corep().adjoint(), 0.5, 8, 8, 1e-8, Precision::Quad);
    CHECK(r.index == -1);
    CHECK(r.precision == "quad");
    auto rl = compute_unitary_index(fundamental_corep().adjoint(), 0.5, 8, 8, 1e-8, Precision::LongDouble);
    CHECK(rl.index == -1);
    CHECK(rl.precision == "longdouble");
}

TEST_CASE("refusals: sick thresholds and non-unitary input") {
    MatrixCorep ustar = fundamental_corep().adjoint();
    // a threshold above the whole spectrum leaves nothing retained, so the
    // certificate must refuse rather than report a fake integer
    CHECK_THROWS_AS(compute_unitary_index(ustar, 0.5, 6, 6, 2.0, Precision::Double), GapError);
    CHECK_THROWS_AS(compute_unitary_index(ustar, 0.5, 6, 6, -1.0, Precision::Double),
                    std::invalid_argument);

    auto alg = suq2_algebra();
    MatrixCorep not_unitary(alg, {{suq2_b()}});
    CHECK_THROWS_AS(compute_unitary_index(not_unitary, 0.5, 6, 6, 1e-8, Precision::Double),
                    std::invalid_argument);
}
