#include "qjoin/join.hpp"

#include "qjoin/group.hpp"

#include <sstream>

namespace qjoin {

namespace {

Element path_scalar(const AlgebraPtr& h, const ScalarQ& c) {
    return h->element(Word{}, c);
}

PathElement const_path(const Element& e, Side side = Side::Full) {
    return PathElement::constant(Tensor::simple({e}), side);
}

bool first_leg_scalar(const Tensor& t) {
    for (const auto& [k, c] : t.terms())
        if (!k.at(0).letters.empty()) return false;
    return true;
}

bool tensor_scalar(const Tensor& t) {
    for (const auto& [k, c] : t.terms())
        for (const auto& w : k)
            if (!w.letters.empty()) return false;
    return true;
}

void require_side(const PathElement& p, Side want) {
    if (p.side() != want && p.side() != Side::Full)
        throw std::invalid_argument("path lives on the wrong half interval");
}

}  // namespace

Coaction Coaction::comultiplication(AlgebraPtr h) {
    if (!h || !h->has_hopf())
        throw std::invalid_argument("coaction: comultiplication needs Hopf structure");
    AlgebraPtr copy = h;
    return Coaction(Kind::Comultiplication, std::move(h), std::move(copy));
}

Coaction Coaction::trivial(AlgebraPtr a, AlgebraPtr h) {
    if (!a || !h || !h->has_hopf())
        throw std::invalid_argument("coaction: trivial coaction still needs a counit on H");
    return Coaction(Kind::Trivial, std::move(a), std::move(h));
}

Tensor Coaction::apply(const Element& a) const {
    if (a.algebra() != a_) throw std::invalid_argument("coaction: element of the wrong algebra");
    if (kind_ == Kind::Comultiplication) return a.comultiply();
    return make_tensor(a, h_->one());
}

Element Coaction::retract(const Tensor& t) const {
    if (t.arity() != 2 || t.leg_algebras()[0] != a_ || t.leg_algebras()[1] != h_)
        throw std::invalid_argument("coaction: tensor has the wrong legs");
    return t.apply_counit(1).to_element();
}

bool Coaction::in_image(const Tensor& t, Element* witness) const {
    Element a = retract(t);
    if (!(apply(a) == t)) return false;
    if (witness) *witness = a;
    return true;
}

PathElement make_cone_element(const PathElement& poly, Side side) {
    if (poly.arity() != 1) throw std::invalid_argument("cone element must have one leg");
    if (side == Side::Full) throw std::invalid_argument("cone side must be Left or Right");
    require_side(poly, side);
    Tensor v = (side == Side::Left) ? poly.eval0() : poly.eval1();
    if (!tensor_scalar(v))
        throw BoundaryError(std::string("cone element: value at the collapsed endpoint is not scalar: ") +
                            v.str());
    BoundaryProfile b;
    (side == Side::Left ? b.at0 : b.at1) = Boundary::Scalar;
    return poly.with_side(side).with_boundary(b);
}

PathElement make_suspension_element(const PathElement& poly) {
    if (poly.arity() != 1) throw std::invalid_argument("suspension element must have one leg");
    if (!tensor_scalar(poly.eval0()) || !tensor_scalar(poly.eval1()))
        throw BoundaryError("suspension element: endpoint value is not scalar");
    return poly.with_side(Side::Full).with_boundary({Boundary::Scalar, Boundary::Scalar});
}

PathElement make_join_element(const PathElement& poly, const Coaction& delta) {
    if (poly.arity() != 2 || poly.leg_algebras()[0] != delta.domain() ||
        poly.leg_algebras()[1] != delta.coalgebra())
        throw std::invalid_argument("join element: legs do not match the coaction");
    if (!first_leg_scalar(poly.eval0()))
        throw BoundaryError("join element: value at 0 is not in C (x) H");
    if (!delta.in_image(poly.eval1()))
        throw BoundaryError("join element: value at 1 is not in the coaction image");
    return poly.with_side(Side::Full)
        .with_boundary({Boundary::ScalarFirstLeg, Boundary::CoactionImage});
}

PathElement coact_delta_Delta(const PathElement& f, const Coaction& delta) {
    PathElement checked = make_join_element(f, delta);
    PathElement g = checked.apply_delta(checked.arity() - 1);
    if (!first_leg_scalar(g.eval0()))
        throw BoundaryError("coaction output: value at 0 left C (x) H (x) H");
    Tensor g1 = g.eval1();
    for (const auto& [w, cof] : g1.expand_leg(2))
        if (!delta.in_image(cof))
            throw BoundaryError("coaction output: a cofactor at 1 left the coaction image");
    return g.with_boundary({Boundary::ScalarFirstLeg, Boundary::CoactionImage});
}

bool coaction_invariant(const PathElement& f) {
    if (f.arity() == 0) throw std::invalid_argument("empty path");
    size_t last = f.arity() - 1;
    const AlgebraPtr& h = f.leg_algebras()[last];
    if (!h->has_hopf()) throw std::invalid_argument("last leg has no costructure");
    return f.apply_delta(last) == f.insert_leg(f.arity(), h->one());
}

PathElement PullbackModels::p1(const PathElement& raw) const {
    if (raw.arity() != 2 || raw.leg_algebras()[0] != h || raw.leg_algebras()[1] != h)
        throw std::invalid_argument("model element needs two legs over the Hopf algebra");
    require_side(raw, Side::Left);
    if (!first_leg_scalar(raw.eval0()))
        throw BoundaryError("left model: value at 0 is not in C (x) H");
    return raw.with_side(Side::Left).with_boundary({Boundary::ScalarFirstLeg, Boundary::None});
}

PathElement PullbackModels::p2(const PathElement& raw) const {
    if (raw.arity() != 2 || raw.leg_algebras()[0] != h || raw.leg_algebras()[1] != h)
        throw std::invalid_argument("model element needs two legs over the Hopf algebra");
    require_side(raw, Side::Right);
    if (!Coaction::comultiplication(h).in_image(raw.eval1()))
        throw BoundaryError("right model: value at 1 is not in the comultiplication image");
    return raw.with_side(Side::Right).with_boundary({Boundary::None, Boundary::CoactionImage});
}

Tensor PullbackModels::pi1(const PathElement& f) const { return f.eval_half(); }
Tensor PullbackModels::pi2(const PathElement& f) const { return f.eval_half(); }

PathElement PullbackModels::coact(const PathElement& f) const {
    return f.apply_delta(f.arity() - 1);
}

PullbackModels build_pullback_P(AlgebraPtr h) {
    if (!h || !h->has_hopf()) throw std::invalid_argument("pullback models need a Hopf algebra");
    return PullbackModels{std::move(h)};
}

PullbackElement make_pullback_element(const PullbackModels& models, PathElement p1,
                                      PathElement p2) {
    PathElement v1 = models.p1(p1);
    PathElement v2 = models.p2(p2);
    if (!(models.pi1(v1) == models.pi2(v2)))
        throw BoundaryError("pullback pair: the two evaluations at 1/2 differ");
    return PullbackElement{std::move(v1), std::move(v2)};
}

PathElement adjoint_action(const Element& a, const PathElement& f) {
    if (f.arity() != 1) throw std::invalid_argument("adjoint action: one-leg paths only");
    const AlgebraPtr& h = f.leg_algebras()[0];
    if (a.algebra() != h) throw std::invalid_argument("adjoint action: mixed algebras");
    if (!h->has_hopf()) throw std::invalid_argument("adjoint action needs Hopf structure");
    Tensor sandwich = a.comultiply().apply_antipode(1);  // a(1) (x) S(a(2))
    PathElement out = PathElement::zero({h}, f.side());
    for (const auto& [k, t] : f.terms()) {
        Element x = t.to_element();
        Element acc = h->zero();
        for (const auto& [dk, dc] : sandwich.terms())
            acc = acc + h->element(dk[0], dc) * x * h->element(dk[1], ScalarQ(1));
        out = out + PathElement::monomial(k, Tensor::simple({acc}), f.side());
    }
    return out.with_boundary(f.boundary());
}

LambdaMaps::LambdaMaps(MatrixCorep u) : u_(std::move(u)) {
    if (!u_.algebra()->has_hopf())
        throw std::invalid_argument("lambda maps need Hopf structure");
}

PathElement LambdaMaps::j1(const Element& h) const {
    if (h.algebra() != u_.algebra()) throw std::invalid_argument("j1: wrong algebra");
    return PathElement::constant(make_tensor(u_.algebra()->one(), h), Side::Left)
        .with_boundary({Boundary::ScalarFirstLeg, Boundary::None});
}

PathElement LambdaMaps::j2(const Element& h) const {
    if (h.algebra() != u_.algebra()) throw std::invalid_argument("j2: wrong algebra");
    return PathElement::constant(h.comultiply(), Side::Right)
        .with_boundary({Boundary::None, Boundary::CoactionImage});
}

PathElement LambdaMaps::ji(const PathElement& c, const Element& h, Side side) const {
    if (c.arity() != 1 || c.leg_algebras()[0] != u_.algebra())
        throw std::invalid_argument("cone factor must be a one-leg path over the Hopf algebra");
    PathElement lifted = c.insert_leg(1, u_.algebra()->one());
    return lifted * (side == Side::Left ? j1(h) : j2(h));
}

PathElement LambdaMaps::J1(const PathElement& c1, const Element& h) const {
    return ji(make_cone_element(c1, Side::Left), h, Side::Left);
}

PathElement LambdaMaps::J2(const PathElement& c2, const Element& h) const {
    return ji(make_cone_element(c2, Side::Right), h, Side::Right);
}

std::vector<PathElement> LambdaMaps::lambda(const std::vector<PathElement>& b, Side side) const {
    size_t n = u_.dim();
    if (b.size() != n) throw std::invalid_argument("lambda: vector length != corep dimension");
    std::vector<PathElement> out;
    for (size_t j = 0; j < n; ++j) {
        PathElement acc = PathElement::zero({u_.algebra(), u_.algebra()}, side);
        for (size_t i = 0; i < n; ++i) acc = acc + ji(b[i], u_.at(i, j), side);
        out.push_back(std::move(acc));
    }
    return out;
}

std::vector<PathElement> LambdaMaps::lambda1(const std::vector<PathElement>& b1) const {
    return lambda(b1, Side::Left);
}

std::vector<PathElement> LambdaMaps::lambda2(const std::vector<PathElement>& b2) const {
    return lambda(b2, Side::Right);
}

XPairReport verify_X_pair(const MatrixCorep& u, const std::vector<PathElement>& b1,
                          const std::vector<PathElement>& b2) {
    size_t n = u.dim();
    if (b1.size() != n || b2.size() != n)
        throw std::invalid_argument("sample vectors must match the corep dimension");
    std::vector<Element> v1, v2;
    for (const auto& p : b1) v1.push_back(p.eval_half().to_element());
    for (const auto& p : b2) v2.push_back(p.eval_half().to_element());

    XPairReport r;
    std::vector<Element> glued = clutching_map(u).apply(v1);
    r.x11 = true;
    for (size_t j = 0; j < n; ++j)
        if (!(glued[j] == v2[j])) r.x11 = false;

    LambdaMaps lm(u);
    auto left = lm.lambda1(b1);
    auto right = lm.lambda2(b2);
    r.x2 = r.x12 = true;
    for (size_t j = 0; j < n; ++j) {
        Tensor a = left[j].eval_half();
        Tensor b = right[j].eval_half();
        if (!(a == b)) r.x2 = false;
        if (!(a.multiply_legs(0) == b.multiply_legs(0))) r.x12 = false;
    }
    return r;
}

std::vector<PathElement> matched_right_vector(const MatrixCorep& u,
                                              const std::vector<PathElement>& b1) {
    std::vector<Element> v1;
    for (const auto& p : b1) v1.push_back(p.eval_half().to_element());
    std::vector<Element> target = clutching_map(u).apply(v1);
    const AlgebraPtr& h = u.algebra();
    // (2 - 2t): unit at 1/2, zero (hence scalar) at 1
    PathElement profile = const_path(path_scalar(h, ScalarQ(2)), Side::Right) -
                          PathElement::coordinate({h}, Side::Right).scaled(ScalarQ(2));
    std::vector<PathElement> out;
    for (const auto& g : target)
        out.push_back(make_cone_element(profile * const_path(g, Side::Right), Side::Right));
    return out;
}

MilnorModuleElement make_milnor_module_element(const MatrixCorep& u,
                                               std::vector<PathElement> f1,
                                               std::vector<PathElement> f2) {
    for (auto& p : f1) p = make_cone_element(p, Side::Left);
    for (auto& p : f2) p = make_cone_element(p, Side::Right);
    if (!verify_X_pair(u, f1, f2).x11)
        throw BoundaryError("module pair does not glue along the clutching map at 1/2");
    return MilnorModuleElement{std::move(f1), std::move(f2)};
}

PathElement random_cone_element(const AlgebraPtr& h, Side side, int max_terms, int max_len,
                                Rng& rng) {
    if (side == Side::Full) throw std::invalid_argument("cone side must be Left or Right");
    const ScalarQ pool[] = {ScalarQ(0), ScalarQ(1), ScalarQ(-1), ScalarQ(2), ScalarQ::q_power(1)};
    PathElement unit = const_path(h->one(), side);
    PathElement t = PathElement::coordinate({h}, side);
    PathElement vanish = (side == Side::Left) ? t : unit - t;
    PathElement p = unit.scaled(pool[rng.below(5)]);
    int layers = rng.range(1, max_terms);
    for (int k = 1; k <= layers; ++k)
        p = p + vanish.pow(k) * const_path(random_element(h, 2, max_len, rng), side);
    return make_cone_element(p, side);
}

PathElement random_join_element(const Coaction& delta, int max_len, Rng& rng) {
    const AlgebraPtr &a = delta.domain(), &h = delta.coalgebra();
    PathElement unit = PathElement::constant(Tensor::unit({a, h}));
    PathElement t = PathElement::coordinate({a, h});
    ScalarQ lam = ScalarQ(rng.range(-2, 2));
    Element x = random_element(h, 2, max_len, rng);
    Element y = random_element(a, 2, max_len, rng);
    PathElement p =
        (unit - t) * PathElement::constant(make_tensor(path_scalar(a, lam), x)) +
        t * PathElement::constant(delta.apply(y)) +
        t * (unit - t) *
            PathElement::constant(make_tensor(random_element(a, 1, max_len, rng),
                                              random_element(h, 1, max_len, rng)));
    return make_join_element(p, delta);
}

IdempotentPath::IdempotentPath(AlgebraPtr alg, std::vector<std::vector<PathElement>> entries)
    : alg_(std::move(alg)), entries_(std::move(entries)) {
    if (!alg_ || entries_.empty()) throw std::invalid_argument("idempotent path: empty matrix");
    for (auto& row : entries_) {
        if (row.size() != entries_.size())
            throw std::invalid_argument("idempotent path: matrix must be square");
        for (auto& e : row) {
            if (e.arity() == 0)
                e = PathElement::zero({alg_});
            else if (e.arity() != 1 || e.leg_algebras()[0] != alg_)
                throw std::invalid_argument("idempotent path: entry over the wrong algebra");
        }
    }
}

IdempotentPath IdempotentPath::multiply(const IdempotentPath& o) const {
    if (alg_ != o.alg_ || dim() != o.dim())
        throw std::invalid_argument("idempotent path: size or algebra mismatch");
    size_t n = dim();
    std::vector<std::vector<PathElement>> out(n, std::vector<PathElement>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            PathElement acc = PathElement::zero({alg_});
            for (size_t k = 0; k < n; ++k) acc = acc + entries_[i][k] * o.entries_[k][j];
            out[i][j] = std::move(acc);
        }
    return IdempotentPath(alg_, std::move(out));
}

IdempotentPath IdempotentPath::adjoint() const {
    size_t n = dim();
    std::vector<std::vector<PathElement>> out(n, std::vector<PathElement>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out[i][j] = entries_[j][i].star();
    return IdempotentPath(alg_, std::move(out));
}

std::vector<std::vector<Element>> IdempotentPath::eval(const BigRational& t) const {
    size_t n = dim();
    std::vector<std::vector<Element>> out(n, std::vector<Element>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out[i][j] = entries_[i][j].eval(t).to_element();
    return out;
}

bool IdempotentPath::operator==(const IdempotentPath& o) const {
    if (alg_ != o.alg_ || dim() != o.dim()) return false;
    for (size_t i = 0; i < dim(); ++i)
        for (size_t j = 0; j < dim(); ++j)
            if (!(entries_[i][j] == o.entries_[i][j])) return false;
    return true;
}

IdempotentPath milnor_idempotent(const MatrixCorep& a) {
    if (!a.multiply(a.adjoint()).is_identity() || !a.adjoint().multiply(a).is_identity())
        throw std::invalid_argument("clutching idempotent needs a unitary matrix");
    const AlgebraPtr& h = a.algebra();
    size_t n = a.dim();
    PathElement c = PathElement::monomial(PathKey{0, 1, 0}, Tensor::unit({h}));
    PathElement s = PathElement::monomial(PathKey{0, 0, 1}, Tensor::unit({h}));
    PathElement cc = c * c, ss = s * s, cs = c * s;
    MatrixCorep ad = a.adjoint();
    std::vector<std::vector<PathElement>> e(2 * n, std::vector<PathElement>(2 * n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            e[i][j] = (i == j) ? cc : PathElement::zero({h});
            e[i][n + j] = cs * const_path(a.at(i, j));
            e[n + i][j] = cs * const_path(ad.at(i, j));
            e[n + i][n + j] = (i == j) ? ss : PathElement::zero({h});
        }
    return IdempotentPath(h, std::move(e));
}

IdempotentReport verify_milnor_idempotent(const MatrixCorep& a) {
    IdempotentReport r;
    r.unitary_ok =
        a.multiply(a.adjoint()).is_identity() && a.adjoint().multiply(a).is_identity();
    if (!r.unitary_ok) {
        r.note = "input matrix is not unitary";
        return r;
    }
    IdempotentPath p = milnor_idempotent(a);
    r.idempotent_ok = (p.multiply(p) == p);
    r.selfadjoint_ok = (p.adjoint() == p);
    r.endpoints_ok = true;
    for (const auto& endpoint : {BigRational(0), BigRational(1)})
        for (const auto& row : p.eval(endpoint))
            for (const auto& entry : row)
                if (!entry.is_scalar()) {
                    r.endpoints_ok = false;
                    r.note = "endpoint fiber is not scalar: " + entry.str();
                }
    if (!r.idempotent_ok) r.note = "p^2 != p";
    else if (!r.selfadjoint_ok) r.note = "p* != p";
    return r;
}

FreenessReport ellwood_freeness_check(const Coaction& delta) {
    const AlgebraPtr &a = delta.domain(), &h = delta.coalgebra();
    std::vector<Word> ba = finite_basis(a);
    std::vector<Word> bh = finite_basis(h);
    FreenessReport rep;
    rep.dim_algebra = ba.size();
    rep.dim_hopf = bh.size();

    std::map<std::pair<Word, Word>, size_t> col;
    for (const auto& wa : ba)
        for (const auto& wh : bh) col.emplace(std::make_pair(wa, wh), col.size());
    size_t ncols = col.size();

    // incremental row echelon over Q(q)
    std::vector<std::vector<ScalarQ>> rows;
    std::vector<size_t> pivots;
    for (const auto& wx : ba) {
        Tensor left = make_tensor(a->element(wx, ScalarQ(1)), h->one());
        for (const auto& wy : ba) {
            if (rows.size() == ncols) break;
            Tensor v = left * delta.apply(a->element(wy, ScalarQ(1)));
            std::vector<ScalarQ> row(ncols, ScalarQ(0));
            for (const auto& [key, cf] : v.terms()) row[col.at({key[0], key[1]})] = cf;
            for (size_t r = 0; r < rows.size(); ++r) {
                const ScalarQ& lead = row[pivots[r]];
                if (lead.is_zero()) continue;
                ScalarQ factor = lead / rows[r][pivots[r]];
                for (size_t cidx = 0; cidx < ncols; ++cidx)
                    row[cidx] = row[cidx] - factor * rows[r][cidx];
            }
            size_t piv = ncols;
            for (size_t cidx = 0; cidx < ncols; ++cidx)
                if (!row[cidx].is_zero()) {
                    piv = cidx;
                    break;
                }
            if (piv == ncols) continue;
            pivots.push_back(piv);
            rows.push_back(std::move(row));
        }
    }
    rep.span_dim = rows.size();
    return rep;
}

XEquivalenceReport verify_X_equivalence(const MatrixCorep& u, Rng& rng, int samples) {
    XEquivalenceReport rep;
    const AlgebraPtr& h = u.algebra();
    size_t n = u.dim();
    for (int s = 0; s < samples; ++s) {
        std::vector<PathElement> b1;
        for (size_t i = 0; i < n; ++i)
            b1.push_back(random_cone_element(h, Side::Left, 2, 2, rng));
        std::vector<PathElement> b2;
        switch (s % 3) {
            case 0:  // matched: gluing holds by construction
                b2 = matched_right_vector(u, b1);
                break;
            case 1: {  // matched, then knocked off by a nonscalar summand
                b2 = matched_right_vector(u, b1);
                PathElement bump =
                    (const_path(path_scalar(h, ScalarQ(2)), Side::Right) -
                     PathElement::coordinate({h}, Side::Right).scaled(ScalarQ(2))) *
                    const_path(h->gen(rng.below(h->generator_count())), Side::Right);
                size_t hit = rng.below(n);
                b2[hit] = b2[hit] + bump;
                break;
            }
            default:  // unrelated
                for (size_t i = 0; i < n; ++i)
                    b2.push_back(random_cone_element(h, Side::Right, 2, 2, rng));
        }
        XPairReport pr = verify_X_pair(u, b1, b2);
        ++rep.samples;
        if (!pr.consistent()) {
            ++rep.inconsistent;
            if (rep.notes.size() < 3)
                rep.notes.push_back("forms disagree on sample " + std::to_string(s));
            continue;
        }
        if (pr.x11) ++rep.holding;
        else ++rep.failing;
    }
    return rep;
}

}  // namespace qjoin
