#include "qjoin/algebra.hpp"
#include "qjoin/group.hpp"
#include "qjoin/suq2.hpp"

#include "doctest.h"

using namespace qjoin;

namespace {

const ScalarQ kQ = ScalarQ::q_power(1);
const ScalarQ kQinv = ScalarQ::q_power(-1);

Element a() { return suq2_a(); }
Element as() { return suq2_a_star(); }
Element b() { return suq2_b(); }
Element bs() { return suq2_b_star(); }

}  // namespace

TEST_CASE("defining relations reduce to normal form") {
    // b.a rewrites to q^{-1} a.b, and the mixed a-pairs cancel to 1 minus
    // a b-quadratic.
    CHECK(b() * a() == kQinv * (a() * b()));
    CHECK(bs() * a() == kQinv * (a() * bs()));
    CHECK(b() * as() == kQ * (as() * b()));
    CHECK(bs() * as() == kQ * (as() * bs()));
    CHECK(bs() * b() == b() * bs());
    CHECK(as() * a() == suq2_algebra()->one() - b() * bs());
    CHECK(a() * as() == suq2_algebra()->one() - ScalarQ::q_power(2) * (b() * bs()));
}

TEST_CASE("unit is neutral for a sample of random elements") {
    Rng rng(11);
    auto alg = suq2_algebra();
    for (int i = 0; i < 50; ++i) {
        Element x = random_element(alg, 3, 5, rng);
        CHECK(alg->one() * x == x);
        CHECK(x * alg->one() == x);
    }
}

TEST_CASE("multiplication is associative on random triples") {
    Rng rng(12);
    auto alg = suq2_algebra();
    for (int i = 0; i < 30; ++i) {
        Element x = random_element(alg, 2, 4, rng);
        Element y = random_element(alg, 2, 4, rng);
        Element z = random_element(alg, 2, 4, rng);
        CHECK((x * y) * z == x * (y * z));
    }
}

TEST_CASE("star implements the documented involution") {
    CHECK(a().star() == as());
    CHECK(as().star() == a());
    CHECK(b().star() == bs());
    CHECK(suq2_algebra()->one().star() == suq2_algebra()->one());
    // star(q * b.a) = q * a*.b* after normalization.
    Element x = (b() * a()).scaled(kQ);
    CHECK(x.star() == kQ * (as() * bs()));
}

TEST_CASE("star is an involution and an anti-homomorphism") {
    Rng rng(13);
    auto alg = suq2_algebra();
    for (int i = 0; i < 40; ++i) {
        Element x = random_element(alg, 3, 5, rng);
        Element y = random_element(alg, 3, 5, rng);
        CHECK(x.star().star() == x);
        CHECK((x * y).star() == y.star() * x.star());
    }
}

TEST_CASE("comultiplication on the generators") {
    auto alg = suq2_algebra();
    Tensor da = a().comultiply();
    Tensor expected_da = make_tensor(a(), a()) - make_tensor(bs(), b()).scaled(kQ);
    CHECK(da == expected_da);

    Tensor db = b().comultiply();
    CHECK(db == make_tensor(b(), a()) + make_tensor(as(), b()));

    CHECK(alg->one().comultiply() == Tensor::unit({alg, alg}));
}

TEST_CASE("counit on the generators") {
    CHECK(a().counit() == ScalarQ(1));
    CHECK(b().counit() == ScalarQ(0));
    CHECK(suq2_algebra()->one().counit() == ScalarQ(1));
}

TEST_CASE("antipode on the generators and its square") {
    CHECK(a().antipode() == as());
    CHECK(as().antipode() == a());
    CHECK(b().antipode() == (-kQ) * b());
    CHECK(bs().antipode() == (-kQinv) * bs());
    CHECK(suq2_algebra()->one().antipode() == suq2_algebra()->one());
    // The antipode is not involutive here: S^2(b) = q^2 b.
    CHECK(b().antipode().antipode() == ScalarQ::q_power(2) * b());
    CHECK(b().antipode().antipode() != b());
}

TEST_CASE("antipode axiom closes on the generators") {
    auto alg = suq2_algebra();
    for (const Element& x : {a(), as(), b(), bs()}) {
        Tensor t = x.comultiply();
        Element lhs = t.apply_antipode(0).multiply_legs(0).to_element();
        CHECK(lhs == alg->one().scaled(x.counit()));
        Element rhs = t.apply_antipode(1).multiply_legs(0).to_element();
        CHECK(rhs == alg->one().scaled(x.counit()));
    }
}

static void check_hopf_axioms(const AlgebraPtr& alg, const Element& x) {
    Tensor dx = x.comultiply();
    // Coassociativity.
    CHECK(dx.apply_delta(0) == dx.apply_delta(1));
    // Counit laws.
    CHECK(dx.apply_counit(0).to_element() == x);
    CHECK(dx.apply_counit(1).to_element() == x);
    // Antipode law, both legs.
    Element unit_scaled = alg->one().scaled(x.counit());
    CHECK(dx.apply_antipode(0).multiply_legs(0).to_element() == unit_scaled);
    CHECK(dx.apply_antipode(1).multiply_legs(0).to_element() == unit_scaled);
    // Comultiplication and counit are *-compatible.
    CHECK(dx.star() == x.star().comultiply());
    CHECK(x.star().counit() == x.counit());
}

TEST_CASE("hopf axioms hold on random elements") {
    Rng rng(14);
    auto alg = suq2_algebra();
    for (int i = 0; i < 25; ++i) {
        Element x = random_element(alg, 3, 6, rng);
        check_hopf_axioms(alg, x);
    }
}

TEST_CASE("comultiplication and counit are homomorphisms") {
    Rng rng(15);
    auto alg = suq2_algebra();
    for (int i = 0; i < 20; ++i) {
        Element x = random_element(alg, 2, 4, rng);
        Element y = random_element(alg, 2, 4, rng);
        CHECK((x * y).comultiply() == x.comultiply() * y.comultiply());
        CHECK((x * y).counit() == x.counit() * y.counit());
        CHECK((x * y).antipode() == y.antipode() * x.antipode());
    }
}

TEST_CASE("rewriting is confluent across strategies") {
    Rng rng(16);
    auto report = normal_form_confluence_check(suq2_algebra(), 200, 8, rng);
    CHECK(report.divergences == 0);
}

TEST_CASE("all rule overlaps resolve consistently") {
    auto report = local_confluence_check(suq2_algebra());
    CHECK(report.trials > 0);
    CHECK(report.divergences == 0);
    auto z2 = group_function_algebra(GroupTable::cyclic(2));
    auto report2 = local_confluence_check(z2);
    CHECK(report2.divergences == 0);
}

TEST_CASE("a corrupted rule set is detected as divergent") {
    // Same presentation but with a wrong scalar in one cancellation rule.
    AlgebraDef def;
    def.id = "corrupted";
    def.generators = {"a", "a*", "b", "b*"};
    def.star = {1, 0, 3, 2};
    auto rule = [](std::initializer_list<uint8_t> lhs,
                   std::vector<std::pair<Word, ScalarQ>> rhs) {
        RewriteRule r;
        r.lhs = Word(lhs);
        r.rhs = std::move(rhs);
        return r;
    };
    const ScalarQ q = ScalarQ::q_power(1);
    const ScalarQ qinv = ScalarQ::q_power(-1);
    def.rules.push_back(rule({2, 0}, {{Word{0, 2}, qinv}}));
    def.rules.push_back(rule({3, 0}, {{Word{0, 3}, qinv}}));
    def.rules.push_back(rule({2, 1}, {{Word{1, 2}, q}}));
    def.rules.push_back(rule({3, 1}, {{Word{1, 3}, q}}));
    def.rules.push_back(rule({3, 2}, {{Word{2, 3}, ScalarQ(1)}}));
    def.rules.push_back(rule({1, 0}, {{Word{}, ScalarQ(1)}, {Word{2, 3}, ScalarQ(-1)}}));
    // Wrong coefficient: q instead of q^2.
    def.rules.push_back(rule({0, 1}, {{Word{}, ScalarQ(1)}, {Word{2, 3}, -q}}));
    auto bad = Algebra::make(std::move(def));

    auto local = local_confluence_check(bad);
    CHECK(local.divergences > 0);
    Rng rng(17);
    auto randomized = normal_form_confluence_check(bad, 300, 8, rng);
    CHECK(randomized.divergences > 0);
}

TEST_CASE("group function algebras are Hopf algebras of the right size") {
    for (const auto& table : GroupTable::all_of_order_up_to(6)) {
        CAPTURE(table.name);
        auto alg = group_function_algebra(table);
        auto basis = finite_basis(alg);
        CHECK(basis.size() == static_cast<size_t>(table.order));
        CHECK(local_confluence_check(alg).divergences == 0);

        // Point masses are self-adjoint idempotents; structure maps follow
        // the group operations.
        Rng rng(18);
        for (int g = 0; g < table.order; ++g) {
            Element dg = alg->gen(static_cast<size_t>(g));
            CHECK(dg * dg == dg);
            CHECK(dg.star() == dg);
            CHECK(dg.counit() == ScalarQ(g == 0 ? 1 : 0));
            check_hopf_axioms(alg, dg);
        }
        for (int i = 0; i < 10; ++i)
            check_hopf_axioms(alg, random_element(alg, 3, 3, rng));
    }
}

TEST_CASE("the trivial group gives the one-dimensional algebra") {
    auto alg = group_function_algebra(GroupTable::cyclic(1));
    CHECK(finite_basis(alg).size() == 1);
    CHECK(alg->gen(0) == alg->one());
    CHECK(alg->one().counit() == ScalarQ(1));
    CHECK(alg->one().antipode() == alg->one());
}

TEST_CASE("antipode of the s3 algebra is a nontrivial involution") {
    auto table = GroupTable::symmetric_3();
    auto alg = group_function_algebra(table);
    bool moved = false;
    for (int g = 0; g < table.order; ++g) {
        Element dg = alg->gen(static_cast<size_t>(g));
        Element sg = dg.antipode();
        CHECK(sg.antipode() == dg);  // S^2 = id on a commutative Hopf algebra
        if (sg != dg) moved = true;
        CHECK(sg == alg->gen(static_cast<size_t>(table.inverse(g))));
    }
    CHECK(moved);
}

TEST_CASE("specialization at q = 1 makes commutators vanish") {
    Rng rng(19);
    auto alg = suq2_algebra();
    for (int i = 0; i < 60; ++i) {
        Word w1 = random_word(*alg, 4, rng);
        Word w2 = random_word(*alg, 4, rng);
        Element x = alg->element(w1, ScalarQ(1));
        Element y = alg->element(w2, ScalarQ(1));
        Element comm = x * y - y * x;
        for (const auto& [w, c] : comm.terms()) {
            (void)w;
            CHECK(c.eval(BigRational(1)) == BigRational(0));
        }
    }
}

TEST_CASE("mixing algebras is rejected") {
    auto z2 = group_function_algebra(GroupTable::cyclic(2));
    CHECK_THROWS_AS((void)(suq2_a() * z2->gen(0)), std::invalid_argument);
    CHECK_FALSE(suq2_a() == z2->gen(0));
}

TEST_CASE("word strings round trip") {
    auto alg = suq2_algebra();
    Word w{0, 2, 3, 1};
    CHECK(alg->word_str(w) == "a.b.b*.a*");
    CHECK(alg->parse_word("a.b.b*.a*") == w);
    CHECK(alg->parse_word("1") == Word{});
}
