#pragma once

#include "qjoin/algebra.hpp"

#include <memory>
#include <string>
#include <vector>

namespace qjoin {

/// Multiplication table of a finite group. Element 0 is always the identity.
struct GroupTable {
    std::string name;
    int order = 0;
    std::vector<int> mul;  // row-major: mul[a * order + b] = a*b
    std::vector<int> inv;

    int product(int a, int b) const { return mul[static_cast<size_t>(a) * order + b]; }
    int inverse(int a) const { return inv[static_cast<size_t>(a)]; }

    /// Checks closure, associativity, identity and inverses; throws on defect.
    void validate() const;

    static GroupTable cyclic(int n);
    static GroupTable klein_four();
    static GroupTable symmetric_3();
    /// Every group of order <= n, up to isomorphism, smallest first.
    static std::vector<GroupTable> all_of_order_up_to(int n);
    static GroupTable by_name(const std::string& name);
};

using GroupPtr = std::shared_ptr<const GroupTable>;

/// Function algebra C(G) on the point-mass basis, as a presented Hopf
/// *-algebra. The basis elements are the indicator functions d0..d{n-1}
/// (dg is the indicator of group element g); they are self-adjoint
/// idempotents summing to 1, which the rewriting system enforces by
/// eliminating the top generator. Structure maps: comultiplication splits a
/// point mass over all factorizations, the counit evaluates at the identity,
/// and the antipode pulls back along inversion.
AlgebraPtr group_function_algebra(const GroupTable& table);

/// Function algebra C(X) on an n-point set: same idempotent presentation,
/// no costructure. Used for coaction examples that are not group algebras.
AlgebraPtr set_function_algebra(int npoints, const std::string& id = "");

/// Normal-form basis of a finite-dimensional presented algebra, found by
/// closing {1} under multiplication by generators. Throws when the closure
/// exceeds `cap` monomials.
std::vector<Word> finite_basis(const AlgebraPtr& alg, size_t cap = 4096);

}  // namespace qjoin
