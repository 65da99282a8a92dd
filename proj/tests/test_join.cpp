#include "qjoin/join.hpp"

#include "qjoin/group.hpp"
#include "qjoin/suq2.hpp"

#include "doctest.h"

using namespace qjoin;

namespace {

const ScalarQ kQ = ScalarQ::q_power(1);

AlgebraPtr H() { return suq2_algebra(); }

PathElement cpath(const Element& e, Side side = Side::Full) {
    return PathElement::constant(Tensor::simple({e}), side);
}

PathElement tpath(Side side = Side::Full) { return PathElement::coordinate({H()}, side); }

Element scal(long v) { return H()->element(Word{}, ScalarQ(v)); }

}  // namespace

TEST_CASE("circle coordinates obey s^2 = 1 - c^2") {
    Tensor unit = Tensor::unit({H()});
    PathElement c = PathElement::monomial(PathKey{0, 1, 0}, unit);
    PathElement s = PathElement::monomial(PathKey{0, 0, 1}, unit);
    PathElement one = PathElement::constant(unit);
    CHECK(s * s == one - c * c);
    CHECK(c * c + s * s == one);
    CHECK(s.pow(3) == s - c * c * s);
    // normalization happens on construction too
    CHECK(PathElement::monomial(PathKey{0, 0, 2}, unit) == one - c * c);
    PathElement x = cpath(suq2_b()) * (c * c + s * s);
    CHECK(x == cpath(suq2_b()));
}

TEST_CASE("paths evaluate exactly at rational times") {
    PathElement f = tpath() * tpath() * cpath(suq2_b()) + cpath(scal(1));
    Tensor at = f.eval(BigRational(1, 2));
    CHECK(at == Tensor::simple({suq2_b().scaled(ScalarQ(QPoly(1), QPoly(4))) + scal(1)}));
    CHECK(f.eval(BigRational(3, 7)) ==
          Tensor::simple({suq2_b().scaled(ScalarQ(QPoly(9), QPoly(49))) + scal(1)}));

    PathElement trig = PathElement::monomial(PathKey{0, 1, 0}, Tensor::simple({suq2_a()})) +
                       PathElement::monomial(PathKey{0, 0, 1}, Tensor::simple({suq2_b()}));
    CHECK(trig.eval0() == Tensor::simple({suq2_a()}));   // (c, s)(0) = (1, 0)
    CHECK(trig.eval1() == Tensor::simple({suq2_b()}));   // (c, s)(1) = (0, 1)
    CHECK_THROWS_AS(trig.eval_half(), EvalError);
    CHECK(trig.uses_trig());
    CHECK_FALSE(f.uses_trig());
}

TEST_CASE("path star fixes the coordinates and conjugates coefficients") {
    PathElement f = kQ * (tpath() * cpath(suq2_b()));
    CHECK(f.star() == kQ * (tpath() * cpath(suq2_b_star())));
    PathElement g = PathElement::monomial(PathKey{1, 1, 1}, Tensor::simple({suq2_a()}));
    CHECK(g.star() == PathElement::monomial(PathKey{1, 1, 1}, Tensor::simple({suq2_a_star()})));
}

TEST_CASE("expanding the last leg is a faithful decomposition") {
    PathElement f = PathElement::coordinate({H(), H()}) *
                        PathElement::constant(suq2_a().comultiply()) +
                    PathElement::constant(make_tensor(suq2_b(), suq2_b_star()));
    auto parts = f.expand_last_leg();
    CHECK(parts.size() > 1);
    PathElement back = PathElement::zero({H(), H()});
    for (const auto& [w, cof] : parts)
        back = back + cof.insert_leg(1, H()->element(w, ScalarQ(1)));
    CHECK(back == f);
}

TEST_CASE("cone membership checks the collapsed endpoint") {
    CHECK_NOTHROW(make_cone_element(tpath(Side::Left) * cpath(suq2_b(), Side::Left), Side::Left));
    CHECK_THROWS_AS(make_cone_element(cpath(suq2_b(), Side::Left), Side::Left), BoundaryError);
    // (1 - t) a + t 1 is scalar at t = 1 but not at t = 0
    PathElement right = (cpath(scal(1)) - tpath()) * cpath(suq2_a()) + tpath() * cpath(scal(1));
    CHECK_NOTHROW(make_cone_element(right, Side::Right));
    CHECK_THROWS_AS(make_cone_element(right, Side::Left), BoundaryError);
    // a path already committed to one half cannot be revalidated as the other
    CHECK_THROWS_AS(make_cone_element(tpath(Side::Right) * cpath(suq2_b(), Side::Right), Side::Left),
                    std::invalid_argument);
    PathElement cone = make_cone_element(tpath(Side::Left) * cpath(suq2_a(), Side::Left), Side::Left);
    CHECK(cone.boundary().at0 == Boundary::Scalar);
    // a suspension needs both endpoints scalar
    CHECK_NOTHROW(make_suspension_element(tpath() * (cpath(scal(1)) - tpath()) * cpath(suq2_b()) +
                                          cpath(scal(2))));
    CHECK_THROWS_AS(make_suspension_element(tpath() * cpath(suq2_b())), BoundaryError);
}

TEST_CASE("join membership accepts scalar-at-0 and image-at-1 paths") {
    Coaction delta = Coaction::comultiplication(H());
    PathElement t2 = PathElement::coordinate({H(), H()});
    PathElement one2 = PathElement::constant(Tensor::unit({H(), H()}));
    Element alpha = suq2_a();

    PathElement good = t2 * PathElement::constant(alpha.comultiply()) +
                       (one2 - t2) * PathElement::constant(make_tensor(scal(1), alpha));
    CHECK_NOTHROW(make_join_element(good, delta));

    PathElement bad0 = PathElement::constant(make_tensor(alpha, H()->one()));
    CHECK_THROWS_AS(make_join_element(bad0, delta), BoundaryError);

    CHECK_NOTHROW(make_join_element(one2, delta));

    // alpha (x) alpha misses the -q b* (x) b half of the comultiplication
    PathElement bad1 = t2 * PathElement::constant(make_tensor(alpha, alpha));
    CHECK_THROWS_AS(make_join_element(bad1, delta), BoundaryError);

    // products of join elements stay join elements
    Rng rng(5);
    for (int i = 0; i < 6; ++i) {
        PathElement f = random_join_element(delta, 2, rng);
        PathElement g = random_join_element(delta, 2, rng);
        CHECK_NOTHROW(make_join_element(f * g, delta));
        CHECK_NOTHROW(make_join_element(f + g, delta));
    }
}

TEST_CASE("coacting on the interval algebra preserves both boundary conditions") {
    Coaction delta = Coaction::comultiplication(H());
    Element alpha = suq2_a();

    PathElement t2 = PathElement::coordinate({H(), H()});
    PathElement one2 = PathElement::constant(Tensor::unit({H(), H()}));
    PathElement f1 = t2 * PathElement::constant(alpha.comultiply()) +
                     (one2 - t2) * PathElement::constant(make_tensor(scal(1), alpha));
    PathElement g1 = coact_delta_Delta(f1, delta);
    // the scalar-leg value 1 (x) alpha picks up the comultiplied copy
    CHECK(g1.eval0() == make_tensor(scal(1), alpha).apply_delta(1));
    // and at 1 the two coassociative expansions coincide
    Tensor da = alpha.comultiply();
    CHECK(g1.eval1() == da.apply_delta(1));
    CHECK(g1.eval1() == da.apply_delta(0));

    PathElement unit = make_join_element(one2, delta);
    CHECK(coact_delta_Delta(unit, delta) ==
          PathElement::constant(Tensor::unit({H(), H(), H()})));

    Rng rng(17);
    for (int i = 0; i < 10; ++i)
        CHECK_NOTHROW(coact_delta_Delta(random_join_element(delta, 2, rng), delta));
}

TEST_CASE("model elements with a trivial last leg are coaction invariant") {
    PathElement f = (tpath() * cpath(suq2_b())).insert_leg(1, H()->one());
    CHECK(coaction_invariant(f));
    PathElement g = PathElement::constant(make_tensor(scal(1), suq2_a()));
    CHECK_FALSE(coaction_invariant(g));
}

TEST_CASE("pullback models match along the half-time fiber") {
    PullbackModels models = build_pullback_P(H());
    PathElement t2 = PathElement::coordinate({H(), H()}, Side::Left);
    PathElement beta1 = PathElement::constant(make_tensor(suq2_b(), H()->one()), Side::Left);
    PathElement lhs = t2 * beta1;

    CHECK(models.pi1(models.p1(lhs)) ==
          make_tensor(suq2_b(), H()->one()).scaled(ScalarQ(QPoly(1), QPoly(2))));

    // (1 - t)(beta (x) 1) passes through the same fiber point and vanishes at 1
    PathElement rhs = (PathElement::constant(Tensor::unit({H(), H()}), Side::Right) -
                       PathElement::coordinate({H(), H()}, Side::Right)) *
                      PathElement::constant(make_tensor(suq2_b(), H()->one()), Side::Right);
    CHECK_NOTHROW(make_pullback_element(models, lhs, rhs));

    PathElement off = rhs + PathElement::constant(suq2_a().comultiply(), Side::Right);
    CHECK_THROWS_AS(make_pullback_element(models, lhs, off), BoundaryError);

    // boundary screening of the two halves
    CHECK_THROWS_AS(models.p1(PathElement::constant(make_tensor(suq2_b(), H()->one()), Side::Left)),
                    BoundaryError);
    CHECK_THROWS_AS(models.p2(PathElement::constant(make_tensor(suq2_b(), H()->one()), Side::Right)),
                    BoundaryError);
}

TEST_CASE("adjoint action collapses and twists as the costructure dictates") {
    PathElement f = make_cone_element((cpath(scal(1), Side::Right) - tpath(Side::Right)) *
                                          cpath(suq2_b(), Side::Right) +
                                      cpath(scal(2), Side::Right),
                                      Side::Right);
    CHECK(adjoint_action(H()->one(), f) == f);
    CHECK(adjoint_action(suq2_a(), cpath(scal(1), Side::Right)) == cpath(scal(1), Side::Right));

    // alpha |> (t beta) works out to t (q b + (q^2 - q^3) b.b.b*)
    PathElement tb = tpath() * cpath(suq2_b());
    Element expected = suq2_b().scaled(kQ) +
                       H()->element(H()->parse_word("b.b.b*"),
                                    ScalarQ::q_power(2) - ScalarQ::q_power(3));
    CHECK(adjoint_action(suq2_a(), tb) == tpath() * cpath(expected));
}

TEST_CASE("adjoint action satisfies the module algebra laws") {
    Rng rng(23);
    for (int i = 0; i < 10; ++i) {
        Element x = random_element(H(), 2, 2, rng);
        Element y = random_element(H(), 2, 2, rng);
        PathElement f = random_cone_element(H(), Side::Right, 2, 2, rng);
        PathElement g = random_cone_element(H(), Side::Right, 2, 2, rng);

        CHECK(adjoint_action(x * y, f) == adjoint_action(x, adjoint_action(y, f)));

        PathElement lhs = adjoint_action(x, f * g);
        PathElement rhs = PathElement::zero({H()}, Side::Right);
        Tensor dx = x.comultiply();
        for (const auto& [k, c] : dx.terms())
            rhs = rhs + adjoint_action(H()->element(k[0], c), f) *
                            adjoint_action(H()->element(k[1], ScalarQ(1)), g);
        CHECK(lhs == rhs);

        // the collapsed endpoint stays scalar
        CHECK_NOTHROW(make_cone_element(adjoint_action(x, f), Side::Right));
    }
}

TEST_CASE("the j maps land in their models with the right boundary values") {
    LambdaMaps lm(fundamental_corep());
    Element alpha = suq2_a();
    CHECK(lm.j1(alpha) == PathElement::constant(make_tensor(H()->one(), alpha), Side::Left));
    CHECK(lm.j2(alpha) == PathElement::constant(alpha.comultiply(), Side::Right));

    PullbackModels models = build_pullback_P(H());
    CHECK_NOTHROW(models.p1(lm.j1(alpha)));
    CHECK_NOTHROW(models.p2(lm.j2(alpha)));

    Rng rng(31);
    PathElement c1 = random_cone_element(H(), Side::Left, 2, 2, rng);
    PathElement c2 = random_cone_element(H(), Side::Right, 2, 2, rng);
    CHECK_NOTHROW(models.p1(lm.J1(c1, alpha)));
    CHECK_NOTHROW(models.p2(lm.J2(c2, alpha)));

    // lambda of the first basis vector through the constant cone 1
    MatrixCorep u = fundamental_corep();
    std::vector<PathElement> e0 = {cpath(scal(1), Side::Left),
                                   PathElement::zero({H()}, Side::Left)};
    auto l1 = lm.lambda1(e0);
    for (size_t j = 0; j < 2; ++j)
        CHECK(l1[j] == PathElement::constant(make_tensor(H()->one(), u.at(0, j)), Side::Left));
}

TEST_CASE("the three gluing conditions agree on matched and broken pairs") {
    MatrixCorep u = fundamental_corep();

    std::vector<PathElement> b1 = {cpath(scal(1), Side::Left),
                                   PathElement::zero({H()}, Side::Left)};
    auto b2 = matched_right_vector(u, b1);
    XPairReport matched = verify_X_pair(u, b1, b2);
    CHECK(matched.x11);
    CHECK(matched.x2);
    CHECK(matched.x12);

    std::vector<PathElement> broken = b2;
    broken[0] = broken[0] + cpath(scal(0), Side::Right) +
                (cpath(scal(2), Side::Right) - tpath(Side::Right).scaled(ScalarQ(2))) *
                    cpath(suq2_b(), Side::Right);
    XPairReport off = verify_X_pair(u, b1, broken);
    CHECK_FALSE(off.x11);
    CHECK_FALSE(off.x2);
    CHECK_FALSE(off.x12);

    CHECK_NOTHROW(make_milnor_module_element(u, b1, b2));
    CHECK_THROWS_AS(make_milnor_module_element(u, b1, broken), BoundaryError);
}

TEST_CASE("the gluing equivalence degenerates for the trivial corepresentation") {
    MatrixCorep triv(H(), {{H()->one()}});
    std::vector<PathElement> b1 = {cpath(scal(1), Side::Left)};
    std::vector<PathElement> same = {cpath(scal(1), Side::Right)};
    std::vector<PathElement> halved = {
        (cpath(scal(1), Side::Right) - tpath(Side::Right)).scaled(ScalarQ(2))};
    XPairReport eq = verify_X_pair(triv, b1, same);
    CHECK(eq.x11);
    CHECK(eq.consistent());
    XPairReport ne = verify_X_pair(triv, b1, halved);  // value 1 vs (2 - 2t) -> 1 at 1/2
    CHECK(ne.x11);
    CHECK(ne.consistent());
    std::vector<PathElement> off = {cpath(scal(2), Side::Right)};
    XPairReport bad = verify_X_pair(triv, b1, off);
    CHECK_FALSE(bad.x11);
    CHECK(bad.consistent());
}

TEST_CASE("sampled gluing pairs keep the three conditions synchronized") {
    Rng rng(41);
    XEquivalenceReport rep = verify_X_equivalence(fundamental_corep(), rng, 30);
    CHECK(rep.samples == 30);
    CHECK(rep.inconsistent == 0);
    CHECK(rep.holding > 0);
    CHECK(rep.failing > 0);
    CHECK(rep.ok());
}

TEST_CASE("the clutching idempotent of a scalar unitary is the circle projector") {
    MatrixCorep one(H(), {{H()->one()}});
    IdempotentPath p = milnor_idempotent(one);
    CHECK(p.dim() == 2);
    CHECK(p.multiply(p) == p);
    CHECK(p.adjoint() == p);
    auto m0 = p.eval(0);
    CHECK(m0[0][0] == H()->one());
    CHECK(m0[1][1] == H()->zero());
    auto m1 = p.eval(1);
    CHECK(m1[0][0] == H()->zero());
    CHECK(m1[1][1] == H()->one());
    CHECK(verify_milnor_idempotent(one).ok());
}

TEST_CASE("the clutching idempotent of the conjugate fundamental matrix certifies") {
    MatrixCorep ustar = fundamental_corep().adjoint();
    IdempotentReport rep = verify_milnor_idempotent(ustar);
    CHECK(rep.unitary_ok);
    CHECK(rep.idempotent_ok);
    CHECK(rep.selfadjoint_ok);
    CHECK(rep.endpoints_ok);
    CHECK(rep.ok());

    IdempotentPath p = milnor_idempotent(ustar);
    CHECK(p.dim() == 4);
    auto m0 = p.eval(0);
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j)
            CHECK(m0[i][j] == ((i == j && i < 2) ? H()->one() : H()->zero()));

    MatrixCorep skew(H(), {{suq2_b(), H()->zero()}, {H()->zero(), suq2_b()}});
    CHECK_FALSE(verify_milnor_idempotent(skew).unitary_ok);
    CHECK_THROWS_AS(milnor_idempotent(skew), std::invalid_argument);
}

TEST_CASE("the span condition separates free from trivial coactions") {
    auto z2 = group_function_algebra(GroupTable::cyclic(2));
    FreenessReport free2 = ellwood_freeness_check(Coaction::comultiplication(z2));
    CHECK(free2.dim_algebra == 2);
    CHECK(free2.dim_hopf == 2);
    CHECK(free2.span_dim == 4);
    CHECK(free2.free());

    // four points with the do-nothing coaction never leave A (x) 1
    auto pts = set_function_algebra(4, "f4");
    FreenessReport stuck = ellwood_freeness_check(Coaction::trivial(pts, z2));
    CHECK(stuck.dim_algebra == 4);
    CHECK(stuck.span_dim == 4);
    CHECK_FALSE(stuck.free());

    auto s3 = group_function_algebra(GroupTable::symmetric_3());
    FreenessReport free6 = ellwood_freeness_check(Coaction::comultiplication(s3));
    CHECK(free6.span_dim == 36);
    CHECK(free6.free());

    FreenessReport stuck6 = ellwood_freeness_check(Coaction::trivial(s3, s3));
    CHECK(stuck6.span_dim == 6);
    CHECK_FALSE(stuck6.free());
}
