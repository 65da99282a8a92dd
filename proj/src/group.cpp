#include "qjoin/group.hpp"

#include <set>

namespace qjoin {

void GroupTable::validate() const {
    if (order <= 0) throw std::invalid_argument("GroupTable: empty group");
    if (mul.size() != static_cast<size_t>(order) * order || inv.size() != static_cast<size_t>(order))
        throw std::invalid_argument("GroupTable: table size mismatch");
    for (int a = 0; a < order; ++a) {
        if (product(0, a) != a || product(a, 0) != a)
            throw std::invalid_argument("GroupTable: element 0 is not the identity");
        if (product(a, inverse(a)) != 0 || product(inverse(a), a) != 0)
            throw std::invalid_argument("GroupTable: bad inverse");
        for (int b = 0; b < order; ++b) {
            int ab = product(a, b);
            if (ab < 0 || ab >= order) throw std::invalid_argument("GroupTable: not closed");
            for (int c = 0; c < order; ++c)
                if (product(ab, c) != product(a, product(b, c)))
                    throw std::invalid_argument("GroupTable: not associative");
        }
    }
}

GroupTable GroupTable::cyclic(int n) {
    if (n <= 0) throw std::invalid_argument("cyclic: order must be positive");
    GroupTable g;
    g.name = "z" + std::to_string(n);
    g.order = n;
    g.mul.resize(static_cast<size_t>(n) * n);
    g.inv.resize(static_cast<size_t>(n));
    for (int a = 0; a < n; ++a) {
        g.inv[a] = (n - a) % n;
        for (int b = 0; b < n; ++b) g.mul[static_cast<size_t>(a) * n + b] = (a + b) % n;
    }
    return g;
}

GroupTable GroupTable::klein_four() {
    GroupTable g;
    g.name = "v4";
    g.order = 4;
    g.mul.resize(16);
    g.inv = {0, 1, 2, 3};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) g.mul[static_cast<size_t>(a) * 4 + b] = a ^ b;
    return g;
}

GroupTable GroupTable::symmetric_3() {
    // Permutations of {0,1,2} listed as: id, (01), (02), (12), (012), (021).
    const int perms[6][3] = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
    auto index_of = [&](const int p[3]) {
        for (int i = 0; i < 6; ++i)
            if (perms[i][0] == p[0] && perms[i][1] == p[1] && perms[i][2] == p[2]) return i;
        return -1;
    };
    GroupTable g;
    g.name = "s3";
    g.order = 6;
    g.mul.resize(36);
    g.inv.resize(6);
    for (int a = 0; a < 6; ++a) {
        for (int b = 0; b < 6; ++b) {
            int comp[3];
            for (int x = 0; x < 3; ++x) comp[x] = perms[a][perms[b][x]];
            g.mul[static_cast<size_t>(a) * 6 + b] = index_of(comp);
        }
        for (int b = 0; b < 6; ++b)
            if (g.mul[static_cast<size_t>(a) * 6 + b] == 0) g.inv[a] = b;
    }
    return g;
}

std::vector<GroupTable> GroupTable::all_of_order_up_to(int n) {
    std::vector<GroupTable> out;
    for (int k = 1; k <= n; ++k) {
        out.push_back(cyclic(k));
        if (k == 4) out.push_back(klein_four());
        if (k == 6) out.push_back(symmetric_3());
    }
    return out;
}

GroupTable GroupTable::by_name(const std::string& name) {
    if (name == "v4") return klein_four();
    if (name == "s3") return symmetric_3();
    if (name.size() >= 2 && name[0] == 'z') {
        int n = std::stoi(name.substr(1));
        return cyclic(n);
    }
    throw std::invalid_argument("unknown group '" + name + "'");
}

AlgebraPtr group_function_algebra(const GroupTable& table) {
    table.validate();
    const int n = table.order;
    AlgebraDef def;
    def.id = "c(" + table.name + ")";
    for (int g = 0; g < n; ++g) def.generators.push_back("d" + std::to_string(g));
    def.star.resize(static_cast<size_t>(n));
    for (int g = 0; g < n; ++g) def.star[static_cast<size_t>(g)] = static_cast<uint8_t>(g);

    // dg*dh = [g=h] dg, and the point masses sum to 1; the latter becomes a
    // rule rewriting the top generator, so normal forms are 1 and the dg
    // with g < n-1 (n of them in total: the algebra has dimension n).
    const uint8_t top = static_cast<uint8_t>(n - 1);
    for (uint8_t g = 0; g < n; ++g)
        for (uint8_t h = 0; h < n; ++h) {
            RewriteRule r;
            r.lhs = Word{g, h};
            if (g == h) r.rhs.emplace_back(Word{g}, ScalarQ(1));
            def.rules.push_back(std::move(r));
        }
    if (n > 1) {
        RewriteRule unit_rule;
        unit_rule.lhs = Word{top};
        unit_rule.rhs.emplace_back(Word{}, ScalarQ(1));
        for (uint8_t g = 0; g < top; ++g) unit_rule.rhs.emplace_back(Word{g}, ScalarQ(-1));
        def.rules.push_back(std::move(unit_rule));
    } else {
        RewriteRule unit_rule;
        unit_rule.lhs = Word{0};
        unit_rule.rhs.emplace_back(Word{}, ScalarQ(1));
        def.rules.push_back(std::move(unit_rule));
    }

    std::vector<GeneratorMaps> hopf(static_cast<size_t>(n));
    for (int g = 0; g < n; ++g) {
        GeneratorMaps& m = hopf[static_cast<size_t>(g)];
        for (int h = 0; h < n; ++h) {
            int k = table.product(table.inverse(h), g);
            m.delta.emplace_back(Word{static_cast<uint8_t>(h)}, Word{static_cast<uint8_t>(k)},
                                 ScalarQ(1));
        }
        m.counit = ScalarQ(g == 0 ? 1 : 0);
        m.antipode.emplace_back(Word{static_cast<uint8_t>(table.inverse(g))}, ScalarQ(1));
    }
    def.hopf = std::move(hopf);
    return Algebra::make(std::move(def));
}

AlgebraPtr set_function_algebra(int npoints, const std::string& id) {
    if (npoints <= 0) throw std::invalid_argument("set_function_algebra: need points");
    const int n = npoints;
    AlgebraDef def;
    def.id = id.empty() ? "c(set" + std::to_string(n) + ")" : id;
    for (int g = 0; g < n; ++g) def.generators.push_back("d" + std::to_string(g));
    def.star.resize(static_cast<size_t>(n));
    for (int g = 0; g < n; ++g) def.star[static_cast<size_t>(g)] = static_cast<uint8_t>(g);
    const uint8_t top = static_cast<uint8_t>(n - 1);
    for (uint8_t g = 0; g < n; ++g)
        for (uint8_t h = 0; h < n; ++h) {
            RewriteRule r;
            r.lhs = Word{g, h};
            if (g == h) r.rhs.emplace_back(Word{g}, ScalarQ(1));
            def.rules.push_back(std::move(r));
        }
    RewriteRule unit_rule;
    unit_rule.lhs = Word{top};
    unit_rule.rhs.emplace_back(Word{}, ScalarQ(1));
    for (uint8_t g = 0; g < top; ++g) unit_rule.rhs.emplace_back(Word{g}, ScalarQ(-1));
    def.rules.push_back(std::move(unit_rule));
    return Algebra::make(std::move(def));
}

std::vector<Word> finite_basis(const AlgebraPtr& alg, size_t cap) {
    std::set<Word> seen;
    std::vector<Word> frontier{Word{}};
    seen.insert(Word{});
    while (!frontier.empty()) {
        std::vector<Word> next;
        for (const Word& w : frontier) {
            for (size_t g = 0; g < alg->generator_count(); ++g) {
                Word cat = w;
                cat.letters.push_back(static_cast<uint8_t>(g));
                for (const auto& [nw, c] : alg->reduce_word(cat, ScalarQ(1))) {
                    (void)c;
                    if (seen.insert(nw).second) {
                        next.push_back(nw);
                        if (seen.size() > cap)
                            throw std::invalid_argument("finite_basis: algebra '" + alg->id() +
                                                        "' exceeds basis cap");
                    }
                }
            }
        }
        frontier = std::move(next);
    }
    return std::vector<Word>(seen.begin(), seen.end());
}

}  // namespace qjoin
