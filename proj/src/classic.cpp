#include "qjoin/classic.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace qjoin {

namespace {

struct UnionFind {
    std::vector<size_t> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), size_t{0}); }
    size_t find(size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

void validate_grid(const std::vector<BigRational>& grid) {
    if (grid.size() < 2) throw std::invalid_argument("grid needs at least the two endpoints");
    if (grid.front() != BigRational(0) || grid.back() != BigRational(1))
        throw std::invalid_argument("grid must start at 0 and end at 1");
    for (size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1])) throw std::invalid_argument("grid must be strictly increasing");
}

void require_same_group(const GroupTable& a, const GroupTable& b) {
    if (a.order != b.order || a.mul != b.mul)
        throw std::invalid_argument("the two spaces carry different groups");
}

// Finishes a JoinModel from its union-find partition: class ids in raw-index
// order (hence grouped by ascending layer), then the induced action, verified
// well-defined on every member of every class.
void finish(JoinModel& m, UnionFind& uf, size_t nraw,
            const std::function<size_t(size_t, int)>& raw_act) {
    std::map<size_t, int> ids;
    m.class_of.assign(nraw, -1);
    for (size_t r = 0; r < nraw; ++r) {
        size_t root = uf.find(r);
        auto [it, fresh] = ids.emplace(root, static_cast<int>(ids.size()));
        m.class_of[r] = it->second;
        if (fresh) {
            int layer = static_cast<int>(r / (static_cast<size_t>(m.x_size) * m.y_size));
            m.layer_of.push_back(layer);
        }
    }
    m.classes = static_cast<int>(ids.size());
    m.action.assign(m.classes, std::vector<int>(m.group.order, -1));
    for (size_t r = 0; r < nraw; ++r) {
        int c = m.class_of[r];
        for (int g = 0; g < m.group.order; ++g) {
            int img = m.class_of[raw_act(r, g)];
            int& slot = m.action[c][g];
            if (slot == -1)
                slot = img;
            else if (slot != img)
                throw std::logic_error("group action does not descend to the quotient");
        }
    }
}

struct RawCoords {
    int layer, x, y;
};
RawCoords split(size_t r, int x_size, int y_size) {
    int y = static_cast<int>(r % y_size);
    r /= y_size;
    int x = static_cast<int>(r % x_size);
    return {static_cast<int>(r / x_size), x, y};
}

// plain base-10 digit run (avoids the octal reading of leading zeros)
BigInt parse_digits(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty number in grid entry");
    BigInt acc(0);
    for (char ch : s) {
        if (ch < '0' || ch > '9') throw std::invalid_argument("malformed grid entry");
        acc = acc * 10 + (ch - '0');
    }
    return acc;
}

BigRational parse_rational(const std::string& tok) {
    if (tok.empty()) throw std::invalid_argument("empty grid entry");
    auto slash = tok.find('/');
    if (slash != std::string::npos) {
        BigInt num = parse_digits(tok.substr(0, slash));
        BigInt den = parse_digits(tok.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in grid entry");
        return BigRational(num, den);
    }
    auto dot = tok.find('.');
    if (dot == std::string::npos) return BigRational(parse_digits(tok));
    BigInt scale(1);
    for (size_t i = dot + 1; i < tok.size(); ++i) scale *= 10;
    return BigRational(parse_digits(tok.substr(0, dot) + tok.substr(dot + 1)), scale);
}

}  // namespace

void FiniteGSpace::validate() const {
    group.validate();
    for (const auto& row : action)
        if (static_cast<int>(row.size()) != group.order)
            throw std::invalid_argument("action table has the wrong width");
    for (int p = 0; p < size(); ++p) {
        if (act(p, 0) != p) throw std::invalid_argument("identity does not act trivially");
        for (int g = 0; g < group.order; ++g) {
            int q = act(p, g);
            if (q < 0 || q >= size()) throw std::invalid_argument("action leaves the point set");
            for (int h = 0; h < group.order; ++h)
                if (act(q, h) != act(p, group.product(g, h)))
                    throw std::invalid_argument("action is not compatible with the product");
        }
    }
}

bool FiniteGSpace::is_free() const {
    for (int p = 0; p < size(); ++p)
        for (int g = 1; g < group.order; ++g)
            if (act(p, g) == p) return false;
    return true;
}

FiniteGSpace FiniteGSpace::regular(const GroupTable& g) {
    FiniteGSpace s;
    s.group = g;
    s.action.assign(g.order, std::vector<int>(g.order));
    for (int p = 0; p < g.order; ++p)
        for (int h = 0; h < g.order; ++h) s.action[p][h] = g.product(p, h);
    return s;
}

FiniteGSpace FiniteGSpace::trivial(const GroupTable& g, int npoints) {
    if (npoints < 1) throw std::invalid_argument("a space needs at least one point");
    FiniteGSpace s;
    s.group = g;
    s.action.assign(npoints, std::vector<int>(g.order));
    for (int p = 0; p < npoints; ++p)
        for (int h = 0; h < g.order; ++h) s.action[p][h] = p;
    return s;
}

std::vector<int> JoinModel::layer_counts() const {
    std::vector<int> counts(grid.size(), 0);
    for (int c = 0; c < classes; ++c) ++counts[layer_of[c]];
    return counts;
}

FiniteGSpace JoinModel::as_gspace() const {
    FiniteGSpace s;
    s.group = group;
    s.action = action;
    return s;
}

std::vector<BigRational> parse_grid(const std::string& csv) {
    std::vector<BigRational> grid;
    size_t start = 0;
    while (start <= csv.size()) {
        size_t comma = csv.find(',', start);
        if (comma == std::string::npos) comma = csv.size();
        grid.push_back(parse_rational(csv.substr(start, comma - start)));
        start = comma + 1;
    }
    validate_grid(grid);
    return grid;
}

JoinModel build_join(const FiniteGSpace& x, const FiniteGSpace& y,
                     const std::vector<BigRational>& grid) {
    x.validate();
    y.validate();
    require_same_group(x.group, y.group);
    validate_grid(grid);

    JoinModel m;
    m.grid = grid;
    m.group = x.group;
    m.x_size = x.size();
    m.y_size = y.size();
    const int L = m.layers();
    const size_t nraw = static_cast<size_t>(L) * m.x_size * m.y_size;

    UnionFind uf(nraw);
    for (int yy = 0; yy < m.y_size; ++yy)
        for (int xx = 1; xx < m.x_size; ++xx) uf.unite(m.raw(0, 0, yy), m.raw(0, xx, yy));
    for (int xx = 0; xx < m.x_size; ++xx)
        for (int yy = 1; yy < m.y_size; ++yy) uf.unite(m.raw(L - 1, xx, 0), m.raw(L - 1, xx, yy));

    auto raw_act = [&](size_t r, int g) {
        auto [l, xx, yy] = split(r, m.x_size, m.y_size);
        return m.raw(l, x.act(xx, g), y.act(yy, g));
    };
    finish(m, uf, nraw, raw_act);
    return m;
}

JoinModel build_join_prime(const FiniteGSpace& x, const std::vector<BigRational>& grid) {
    x.validate();
    validate_grid(grid);

    JoinModel m;
    m.grid = grid;
    m.group = x.group;
    m.x_size = x.size();
    m.y_size = x.group.order;
    const int L = m.layers();
    const size_t nraw = static_cast<size_t>(L) * m.x_size * m.y_size;

    UnionFind uf(nraw);
    for (int h = 0; h < m.y_size; ++h)
        for (int xx = 1; xx < m.x_size; ++xx) uf.unite(m.raw(0, 0, h), m.raw(0, xx, h));
    // top layer: (1,x,h) ~ (1,x',h') exactly when xh = x'h'
    std::map<int, size_t> first_with_product;
    for (int xx = 0; xx < m.x_size; ++xx)
        for (int h = 0; h < m.y_size; ++h) {
            size_t r = m.raw(L - 1, xx, h);
            auto [it, fresh] = first_with_product.emplace(x.act(xx, h), r);
            if (!fresh) uf.unite(it->second, r);
        }

    auto raw_act = [&](size_t r, int g) {
        auto [l, xx, h] = split(r, m.x_size, m.y_size);
        return m.raw(l, xx, m.group.product(h, g));
    };
    finish(m, uf, nraw, raw_act);
    return m;
}

bool check_free(const JoinModel& j) {
    for (int c = 0; c < j.classes; ++c)
        for (int g = 1; g < j.group.order; ++g)
            if (j.action[c][g] == c) return false;
    return true;
}

Eq6Report check_map_eq6(const FiniteGSpace& x, const std::vector<BigRational>& grid) {
    x.validate();
    if (!x.is_free()) throw std::invalid_argument("the comparison map needs a free first factor");

    JoinModel j = build_join(x, FiniteGSpace::regular(x.group), grid);
    JoinModel p = build_join_prime(x, grid);

    Eq6Report rep;
    rep.classes_join = j.classes;
    rep.classes_prime = p.classes;

    const size_t nraw = static_cast<size_t>(j.layers()) * j.x_size * j.y_size;
    auto image = [&](size_t r) {
        auto [l, xx, h] = split(r, j.x_size, j.y_size);
        return p.class_of[p.raw(l, x.act(xx, x.group.inverse(h)), h)];
    };

    // the raw map must be constant on every source class
    std::vector<int> mapped(j.classes, -1);
    rep.well_defined = true;
    for (size_t r = 0; r < nraw; ++r) {
        int c = j.class_of[r];
        int img = image(r);
        if (mapped[c] == -1)
            mapped[c] = img;
        else if (mapped[c] != img)
            rep.well_defined = false;
    }

    std::vector<int> hit(p.classes, 0);
    for (int c = 0; c < j.classes; ++c)
        if (mapped[c] >= 0) ++hit[mapped[c]];
    rep.bijective = rep.well_defined && j.classes == p.classes &&
                    std::all_of(hit.begin(), hit.end(), [](int k) { return k == 1; });

    rep.equivariant = rep.well_defined;
    rep.layers_match = rep.well_defined;
    if (rep.well_defined)
        for (int c = 0; c < j.classes; ++c) {
            if (j.layer_of[c] != p.layer_of[mapped[c]]) rep.layers_match = false;
            for (int g = 0; g < j.group.order; ++g)
                if (mapped[j.action[c][g]] != p.action[mapped[c]][g]) rep.equivariant = false;
        }
    return rep;
}

CensusReport iterated_join_sphere_census(int n, const std::vector<BigRational>& grid) {
    if (n < 0 || n > 4) throw std::invalid_argument("census stages are capped at 4");
    validate_grid(grid);

    FiniteGSpace two = FiniteGSpace::regular(GroupTable::cyclic(2));
    CensusReport rep;
    rep.stages.push_back({0, {}, two.size(), two.is_free()});
    FiniteGSpace current = two;
    for (int stage = 1; stage <= n; ++stage) {
        JoinModel j = build_join(current, two, grid);
        rep.stages.push_back({stage, j.layer_counts(), j.classes, check_free(j)});
        current = j.as_gspace();
    }
    rep.all_free = std::all_of(rep.stages.begin(), rep.stages.end(),
                               [](const CensusStage& s) { return s.free; });
    return rep;
}

}  // namespace qjoin
