#include "qjoin/classic.hpp"

#include "doctest.h"

#include <algorithm>

using namespace qjoin;

namespace {

std::vector<BigRational> half_grid() { return parse_grid("0,0.5,1"); }

}  // namespace

TEST_CASE("finite G-spaces validate and classify freeness") {
    auto z2 = GroupTable::cyclic(2);
    auto reg = FiniteGSpace::regular(z2);
    reg.validate();
    CHECK(reg.size() == 2);
    CHECK(reg.is_free());

    auto fix = FiniteGSpace::trivial(z2, 3);
    fix.validate();
    CHECK_FALSE(fix.is_free());

    // trivial group: freeness is vacuous
    CHECK(FiniteGSpace::trivial(GroupTable::cyclic(1), 3).is_free());

    auto broken = reg;
    broken.action[0][0] = 1;  // identity no longer acts trivially
    CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
}

TEST_CASE("grid parsing gives exact rationals") {
    auto g = parse_grid("0,0.5,1");
    REQUIRE(g.size() == 3);
    CHECK(g[1] == BigRational(1, 2));
    auto thirds = parse_grid("0,1/3,2/3,1");
    CHECK(thirds[1] == BigRational(1, 3));
    CHECK(thirds[2] == BigRational(2, 3));
    auto fine = parse_grid("0,0.25,0.75,1");
    CHECK(fine[1] == BigRational(1, 4));

    CHECK_THROWS_AS(parse_grid("0.5,1"), std::invalid_argument);     // missing 0
    CHECK_THROWS_AS(parse_grid("0,0.5"), std::invalid_argument);     // missing 1
    CHECK_THROWS_AS(parse_grid("0,1,0.5"), std::invalid_argument);   // unsorted
    CHECK_THROWS_AS(parse_grid("0,0.5,0.5,1"), std::invalid_argument);
    CHECK_THROWS(parse_grid("0,apple,1"));
}

TEST_CASE("the two-point self-join has the 2+4+2 census") {
    auto reg = FiniteGSpace::regular(GroupTable::cyclic(2));
    JoinModel j = build_join(reg, reg, half_grid());
    CHECK(j.classes == 8);
    CHECK(j.layer_counts() == std::vector<int>{2, 4, 2});
    CHECK(check_free(j));

    // endpoint collapses act on the right coordinates
    CHECK(j.class_of[j.raw(0, 0, 1)] == j.class_of[j.raw(0, 1, 1)]);
    CHECK(j.class_of[j.raw(2, 1, 0)] == j.class_of[j.raw(2, 1, 1)]);
    CHECK(j.class_of[j.raw(1, 0, 1)] != j.class_of[j.raw(1, 1, 1)]);

    // deterministic quotient: rebuilding reproduces the identical partition
    JoinModel again = build_join(reg, reg, half_grid());
    CHECK(again.class_of == j.class_of);
}

TEST_CASE("joining with a point gives a cone") {
    auto z2 = GroupTable::cyclic(2);
    auto reg = FiniteGSpace::regular(z2);
    auto pt = FiniteGSpace::trivial(z2, 1);

    // point second: the apex sits at t = 0 (the first coordinate collapses)
    JoinModel cone = build_join(reg, pt, half_grid());
    CHECK(cone.layer_counts() == std::vector<int>{1, 2, 2});

    // point first: the apex sits at t = 1
    JoinModel enoc = build_join(pt, reg, half_grid());
    CHECK(enoc.layer_counts() == std::vector<int>{2, 2, 1});
}

TEST_CASE("a trivial two-point factor gives the unreduced suspension counts") {
    auto z2 = GroupTable::cyclic(2);
    auto reg = FiniteGSpace::regular(z2);
    auto poles = FiniteGSpace::trivial(z2, 2);
    JoinModel s = build_join(reg, poles, half_grid());
    CHECK(s.layer_counts() == std::vector<int>{2, 4, 2});
    // the poles are fixed by the whole group, so the action is not free
    CHECK_FALSE(check_free(s));
}

TEST_CASE("fixed points poison freeness at an interior layer") {
    auto z2 = GroupTable::cyclic(2);
    auto fix = FiniteGSpace::trivial(z2, 2);
    JoinModel j = build_join(fix, fix, half_grid());
    CHECK_FALSE(check_free(j));
    // witness in the open part, not just at the collapsed ends
    bool interior_fixed = false;
    for (int c = 0; c < j.classes; ++c)
        if (j.layer_of[c] == 1 && j.action[c][1] == c) interior_fixed = true;
    CHECK(interior_fixed);
}

TEST_CASE("joins of regular spaces stay free for every small group") {
    for (const auto& g : GroupTable::all_of_order_up_to(6)) {
        CAPTURE(g.name);
        auto reg = FiniteGSpace::regular(g);
        JoinModel j = build_join(reg, reg, half_grid());
        CHECK(check_free(j));
        CHECK(j.classes == 2 * g.order + g.order * g.order);
    }
}

TEST_CASE("the primed quotient matches the enumerated top layer") {
    auto z2 = FiniteGSpace::regular(GroupTable::cyclic(2));
    JoinModel p2 = build_join_prime(z2, half_grid());
    CHECK(p2.layer_counts() == std::vector<int>{2, 4, 2});

    auto s3 = FiniteGSpace::regular(GroupTable::symmetric_3());
    JoinModel p6 = build_join_prime(s3, half_grid());
    auto counts = p6.layer_counts();
    REQUIRE(counts.size() == 3);
    CHECK(counts[2] == 6);  // classes of xh = x'h' are the product values
}

TEST_CASE("the comparison map is a layerwise equivariant bijection") {
    for (const auto& g : GroupTable::all_of_order_up_to(6)) {
        CAPTURE(g.name);
        auto rep = check_map_eq6(FiniteGSpace::regular(g), half_grid());
        CHECK(rep.well_defined);
        CHECK(rep.bijective);
        CHECK(rep.equivariant);
        CHECK(rep.layers_match);
        CHECK(rep.ok());
        CHECK(rep.classes_join == rep.classes_prime);
    }

    // trivial group: both quotients coincide and the map is the identity
    auto three = FiniteGSpace::trivial(GroupTable::cyclic(1), 3);
    auto rep = check_map_eq6(three, half_grid());
    CHECK(rep.ok());
    CHECK(rep.classes_join == 3 + 3 + 1);

    // a non-free first factor is rejected
    CHECK_THROWS_AS(check_map_eq6(FiniteGSpace::trivial(GroupTable::cyclic(2), 2), half_grid()),
                    std::invalid_argument);
}

TEST_CASE("iterated self-joins of the two-point space") {
    auto rep = iterated_join_sphere_census(3, half_grid());
    REQUIRE(rep.stages.size() == 4);
    CHECK(rep.stages[0].total == 2);
    CHECK(rep.stages[1].total == 8);
    CHECK(rep.stages[1].layer_counts == std::vector<int>{2, 4, 2});
    CHECK(rep.stages[2].total == 26);
    CHECK(rep.stages[2].layer_counts == std::vector<int>{2, 16, 8});
    CHECK(rep.stages[3].total == 80);
    CHECK(rep.stages[3].layer_counts == std::vector<int>{2, 52, 26});
    for (const auto& s : rep.stages) CHECK(s.free);
    CHECK(rep.all_free);

    auto one = iterated_join_sphere_census(0, half_grid());
    CHECK(one.stages.size() == 1);
    CHECK(one.stages[0].total == 2);
    CHECK(one.all_free);

    // a finer grid only grows the interior
    auto fine = iterated_join_sphere_census(1, parse_grid("0,0.25,0.5,0.75,1"));
    CHECK(fine.stages[1].layer_counts == std::vector<int>{2, 4, 4, 4, 2});

    CHECK_THROWS_AS(iterated_join_sphere_census(5, half_grid()), std::invalid_argument);
}
