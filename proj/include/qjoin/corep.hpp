#pragma once

#include "qjoin/algebra.hpp"

#include <string>
#include <vector>

namespace qjoin {

/// Square matrix over a Hopf *-algebra encoding a corepresentation on C^n:
/// the coaction sends the i-th basis vector to sum_j u[i][j] (x) e_j.
class MatrixCorep {
public:
    MatrixCorep(AlgebraPtr alg, std::vector<std::vector<Element>> entries);

    const AlgebraPtr& algebra() const { return alg_; }
    size_t dim() const { return entries_.size(); }
    const Element& at(size_t i, size_t j) const { return entries_.at(i).at(j); }

    /// Entrywise star of the transpose.
    MatrixCorep adjoint() const;
    MatrixCorep multiply(const MatrixCorep& o) const;
    bool is_identity() const;

private:
    AlgebraPtr alg_;
    std::vector<std::vector<Element>> entries_;
};

/// The defining 2x2 corepresentation [[a, -q b*], [b, a*]] of quantum SU(2).
MatrixCorep fundamental_corep();

struct CorepReport {
    bool comultiplication_ok = true;
    bool counit_ok = true;
    bool unitary_ok = true;
    std::string first_failure;
    bool ok() const { return comultiplication_ok && counit_ok && unitary_ok; }
};

/// Exact verification of the corepresentation identities: the entries
/// comultiply matrix-style, the counit of the matrix is the identity, and
/// the matrix is unitary.
CorepReport verify_corep(const MatrixCorep& u);

/// Module map on H (x) C^n given by a matrix of algebra elements acting on
/// the right: h (x) e_i |-> sum_j h t[i][j] (x) e_j.
class ModuleMatrix {
public:
    ModuleMatrix(AlgebraPtr alg, std::vector<std::vector<Element>> entries);
    size_t dim() const { return entries_.size(); }
    const Element& at(size_t i, size_t j) const { return entries_.at(i).at(j); }
    std::vector<Element> apply(const std::vector<Element>& x) const;
    ModuleMatrix compose(const ModuleMatrix& then) const;

private:
    AlgebraPtr alg_;
    std::vector<std::vector<Element>> entries_;
};

/// The clutching isomorphism attached to a corepresentation: the free module
/// map with matrix S(u[i][j]). Its inverse is the matrix u itself, which the
/// antipode identity sum_k S(u[i][k]) u[k][j] = counit(u[i][j]) 1 makes exact.
ModuleMatrix clutching_map(const MatrixCorep& u);
ModuleMatrix clutching_inverse(const MatrixCorep& u);

struct InverseCheckReport {
    int samples = 0;
    int failures = 0;
    bool matrix_identities_ok = true;
    bool ok() const { return failures == 0 && matrix_identities_ok; }
};

/// Checks the two-sided matrix identities for S(u)*u and u*S(u) and composes
/// the clutching map with its inverse on random module vectors.
InverseCheckReport clutching_inverse_check(const MatrixCorep& u, Rng& rng, int samples);

/// Membership of x = sum_i x_i (x) e_i (coefficients in the coacting algebra
/// itself, coaction = comultiplication) in the cotensor product: the two ways
/// of coacting on x must agree.
bool cotensor_membership(const std::vector<Element>& x, const MatrixCorep& u);

}  // namespace qjoin
