#pragma once

#include "qjoin/algebra.hpp"

namespace qjoin {

/// The coordinate Hopf *-algebra of quantum SU(2), presented by a and b with
/// the defining relations
///   ab  = q ba,    ab* = q b*a,   bb* = b*b,
///   a*a + b*b = 1,  aa* + q^2 bb* = 1,
/// oriented as a confluent rewriting system. Normal forms are the monomials
/// a^i b^j b*^k and a*^i b^j b*^k (i >= 1), so elements have a canonical
/// expansion. The instance is a process-wide singleton; all elements built
/// from it are mutually compatible.
AlgebraPtr suq2_algebra();

/// Generator handles (a, a*, b, b*) for the singleton instance.
Element suq2_a();
Element suq2_a_star();
Element suq2_b();
Element suq2_b_star();

}  // namespace qjoin
