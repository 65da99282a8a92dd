#include "qjoin/suq2.hpp"

namespace qjoin {

namespace {

// Generator indices. The reduction order moves a-letters left past b-letters
// and cancels mixed a/a* pairs, which strictly decreases the weighted word
// order (a-letters weigh twice as much as b-letters), so rewriting always
// terminates; confluence is covered by the rule-overlap check in the tests.
constexpr uint8_t A = 0, AS = 1, B = 2, BS = 3;

AlgebraPtr build() {
    AlgebraDef def;
    def.id = "o(su_q(2))";
    def.generators = {"a", "a*", "b", "b*"};
    def.star = {AS, A, BS, B};

    auto rule = [](std::initializer_list<uint8_t> lhs,
                   std::vector<std::pair<Word, ScalarQ>> rhs) {
        RewriteRule r;
        r.lhs = Word(lhs);
        r.rhs = std::move(rhs);
        return r;
    };
    const ScalarQ q = ScalarQ::q_power(1);
    const ScalarQ qinv = ScalarQ::q_power(-1);
    const ScalarQ q2 = ScalarQ::q_power(2);

    def.rules.push_back(rule({B, A}, {{Word{A, B}, qinv}}));
    def.rules.push_back(rule({BS, A}, {{Word{A, BS}, qinv}}));
    def.rules.push_back(rule({B, AS}, {{Word{AS, B}, q}}));
    def.rules.push_back(rule({BS, AS}, {{Word{AS, BS}, q}}));
    def.rules.push_back(rule({BS, B}, {{Word{B, BS}, ScalarQ(1)}}));
    def.rules.push_back(rule({AS, A}, {{Word{}, ScalarQ(1)}, {Word{B, BS}, ScalarQ(-1)}}));
    def.rules.push_back(rule({A, AS}, {{Word{}, ScalarQ(1)}, {Word{B, BS}, -q2}}));

    // Costructure on the generators; it extends to words multiplicatively
    // (comultiplication, counit) and anti-multiplicatively (antipode).
    std::vector<GeneratorMaps> hopf(4);
    hopf[A].delta = {{Word{A}, Word{A}, ScalarQ(1)}, {Word{BS}, Word{B}, -q}};
    hopf[AS].delta = {{Word{AS}, Word{AS}, ScalarQ(1)}, {Word{B}, Word{BS}, -q}};
    hopf[B].delta = {{Word{B}, Word{A}, ScalarQ(1)}, {Word{AS}, Word{B}, ScalarQ(1)}};
    hopf[BS].delta = {{Word{BS}, Word{AS}, ScalarQ(1)}, {Word{A}, Word{BS}, ScalarQ(1)}};
    hopf[A].counit = ScalarQ(1);
    hopf[AS].counit = ScalarQ(1);
    hopf[B].counit = ScalarQ(0);
    hopf[BS].counit = ScalarQ(0);
    hopf[A].antipode = {{Word{AS}, ScalarQ(1)}};
    hopf[AS].antipode = {{Word{A}, ScalarQ(1)}};
    hopf[B].antipode = {{Word{B}, -q}};
    hopf[BS].antipode = {{Word{BS}, -qinv}};
    def.hopf = std::move(hopf);

    return Algebra::make(std::move(def));
}

}  // namespace

AlgebraPtr suq2_algebra() {
    static AlgebraPtr instance = build();
    return instance;
}

Element suq2_a() { return suq2_algebra()->gen(0); }
Element suq2_a_star() { return suq2_algebra()->gen(1); }
Element suq2_b() { return suq2_algebra()->gen(2); }
Element suq2_b_star() { return suq2_algebra()->gen(3); }

}  // namespace qjoin
