#pragma once

#include "qjoin/corep.hpp"
#include "qjoin/path.hpp"

namespace qjoin {

/// Coaction delta: A -> A (x) H, either a Hopf algebra coacting on itself by
/// comultiplication or the trivial coaction a |-> a (x) 1. Membership in the
/// image is decidable because (id (x) counit) retracts delta exactly.
class Coaction {
public:
    static Coaction comultiplication(AlgebraPtr h);
    static Coaction trivial(AlgebraPtr a, AlgebraPtr h);

    const AlgebraPtr& domain() const { return a_; }
    const AlgebraPtr& coalgebra() const { return h_; }
    Tensor apply(const Element& a) const;
    Element retract(const Tensor& t) const;
    bool in_image(const Tensor& t, Element* witness = nullptr) const;

private:
    enum class Kind { Comultiplication, Trivial };
    Coaction(Kind k, AlgebraPtr a, AlgebraPtr h)
        : kind_(k), a_(std::move(a)), h_(std::move(h)) {}
    Kind kind_;
    AlgebraPtr a_;
    AlgebraPtr h_;
};

/// Validates f(0) in C*1 (left) resp. f(1) in C*1 (right) and stamps the
/// side and boundary profile. Throws BoundaryError on violation.
PathElement make_cone_element(const PathElement& poly, Side side);
/// Scalar at both endpoints, full interval.
PathElement make_suspension_element(const PathElement& poly);
/// Two-leg path with f(0) in C (x) H and f(1) in delta(A).
PathElement make_join_element(const PathElement& poly, const Coaction& delta);

/// id (x) Delta on the last leg of a valid join element. The endpoint
/// conditions of the result are re-verified cofactor by cofactor in the new
/// leg; a failure here would mean the costructure itself is broken.
PathElement coact_delta_Delta(const PathElement& f, const Coaction& delta);

/// Does the last-leg coaction id (x) Delta fix f, i.e. equal f (x) 1?
bool coaction_invariant(const PathElement& f);

/// The three models over one Hopf algebra: P1 (left, two legs, scalar first
/// leg at 0), P2 (right, two legs, comultiplication image at 1), and their
/// common fiber P12 = H (x) H reached by evaluation at 1/2.
struct PullbackModels {
    AlgebraPtr h;
    PathElement p1(const PathElement& raw) const;
    PathElement p2(const PathElement& raw) const;
    Tensor pi1(const PathElement& f) const;
    Tensor pi2(const PathElement& f) const;
    PathElement coact(const PathElement& f) const;
};
PullbackModels build_pullback_P(AlgebraPtr h);

struct PullbackElement {
    PathElement p1;
    PathElement p2;
};
/// Validates the fiber matching pi1(p1) == pi2(p2).
PullbackElement make_pullback_element(const PullbackModels& models, PathElement p1,
                                      PathElement p2);

/// (a |> f)(t) = a(1) f(t) S(a(2)) on one-leg paths.
PathElement adjoint_action(const Element& a, const PathElement& f);

/// The module maps gluing cone pieces into the path models: j1(h) = 1 (x) h,
/// j2(h) = (t |-> h(1)) (x) h(2), J_i(c (x) h) = c * j_i(h), and Lambda_i
/// sending a vector of cone paths through the corepresentation u.
class LambdaMaps {
public:
    explicit LambdaMaps(MatrixCorep u);
    const MatrixCorep& corep() const { return u_; }
    PathElement j1(const Element& h) const;
    PathElement j2(const Element& h) const;
    PathElement J1(const PathElement& c1, const Element& h) const;
    PathElement J2(const PathElement& c2, const Element& h) const;
    std::vector<PathElement> lambda1(const std::vector<PathElement>& b1) const;
    std::vector<PathElement> lambda2(const std::vector<PathElement>& b2) const;

private:
    MatrixCorep u_;
    PathElement ji(const PathElement& c, const Element& h, Side side) const;
    std::vector<PathElement> lambda(const std::vector<PathElement>& b, Side side) const;
};

/// One sampled pair run through the three equivalent gluing conditions:
/// x11 compares S-twisted values in H, x2 compares the images under the
/// lambda maps in H (x) H, x12 is x2 with the two legs multiplied out.
struct XPairReport {
    bool x11 = false;
    bool x2 = false;
    bool x12 = false;
    bool consistent() const { return x11 == x2 && x2 == x12; }
};
XPairReport verify_X_pair(const MatrixCorep& u, const std::vector<PathElement>& b1,
                          const std::vector<PathElement>& b2);

struct XEquivalenceReport {
    int samples = 0;
    int holding = 0;
    int failing = 0;
    int inconsistent = 0;
    std::vector<std::string> notes;
    bool ok() const { return inconsistent == 0 && holding > 0 && failing > 0; }
};
/// Samples matched pairs (the right side lifted so the gluing holds),
/// perturbed pairs, and unrelated pairs; the three conditions must agree on
/// every sample, and both truth values must occur.
XEquivalenceReport verify_X_equivalence(const MatrixCorep& u, Rng& rng, int samples);

/// The right-cone vector (2 - 2t) * chi(b1(1/2)) matched to b1 in the glued
/// sense; chi is the clutching map of u.
std::vector<PathElement> matched_right_vector(const MatrixCorep& u,
                                              const std::vector<PathElement>& b1);

/// Pair of cone vectors glued along chi at 1/2 (validated on construction).
struct MilnorModuleElement {
    std::vector<PathElement> f1;
    std::vector<PathElement> f2;
};
MilnorModuleElement make_milnor_module_element(const MatrixCorep& u,
                                               std::vector<PathElement> f1,
                                               std::vector<PathElement> f2);

PathElement random_cone_element(const AlgebraPtr& h, Side side, int max_terms, int max_len,
                                Rng& rng);
PathElement random_join_element(const Coaction& delta, int max_len, Rng& rng);

/// Square matrix of one-leg paths; the clutching idempotent lives here.
class IdempotentPath {
public:
    IdempotentPath(AlgebraPtr alg, std::vector<std::vector<PathElement>> entries);
    size_t dim() const { return entries_.size(); }
    const AlgebraPtr& algebra() const { return alg_; }
    const PathElement& at(size_t i, size_t j) const { return entries_.at(i).at(j); }
    IdempotentPath multiply(const IdempotentPath& o) const;
    IdempotentPath adjoint() const;
    std::vector<std::vector<Element>> eval(const BigRational& t) const;
    bool operator==(const IdempotentPath& o) const;

private:
    AlgebraPtr alg_;
    std::vector<std::vector<PathElement>> entries_;
};

/// The clutching idempotent [[c^2, c s a], [c s a*, s^2]] of a unitary
/// matrix a, with entries suspended over the full interval. Throws
/// std::invalid_argument when a is not unitary.
IdempotentPath milnor_idempotent(const MatrixCorep& a);

struct IdempotentReport {
    bool unitary_ok = false;
    bool idempotent_ok = false;
    bool selfadjoint_ok = false;
    bool endpoints_ok = false;
    std::string note;
    bool ok() const { return unitary_ok && idempotent_ok && selfadjoint_ok && endpoints_ok; }
};
IdempotentReport verify_milnor_idempotent(const MatrixCorep& a);

struct FreenessReport {
    size_t dim_algebra = 0;
    size_t dim_hopf = 0;
    size_t span_dim = 0;
    bool free() const { return span_dim == dim_algebra * dim_hopf; }
};
/// Span test over finite bases: the coaction is free iff the products
/// (x (x) 1) delta(y) over basis pairs fill A (x) H. Exact rank over Q(q).
FreenessReport ellwood_freeness_check(const Coaction& delta);

}  // namespace qjoin
