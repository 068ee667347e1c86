#pragma once

#include "wfl/catalog.hpp"

namespace wfl {

struct UnsupportedPairing : DomainError {
    using DomainError::DomainError;
};

// (Sp(2n), Spin(2n+1), j_* = id) on the cocharacter lattices.
struct NonStdTriple {
    int n = 0;
    IntLattice X1;  // Z^n
    IntLattice X2;  // even coordinate sum
    IntMat coroots1;  // +-e_i +- e_j, +-e_i
    IntMat coroots2;  // +-e_i +- e_j, +-2 e_i
};

NonStdTriple build_triple(int n);

// Coroot span of the Levi GL(n_1) x ... x GL(n_k) x (core of rank m).
// Blocks take consecutive coordinates, the core the last m.
IntLattice coroot_span_levi(const NonStdTriple& t, const LeviDatum& levi, int side);

// [R2 : R1] / [R^{M2} : R^{M1}]
Rational c_nonstandard_raw(const NonStdTriple& t, const LeviDatum& levi);
// 1/2 when a > 0 and the Levi core is trivial, 1 otherwise.
Rational c_nonstandard_closed(int a, int core_rank);

// Product over factors.  Odd orthogonal factors of g2 pair with symplectic
// factors of g1bar on the same coordinates; every other factor must appear
// identically on both sides.  m2 is the Levi of g2, m1bar its partner.
Rational c_nonstandard_quotient(const EmbeddedGroup& g1bar, const EmbeddedGroup& g2,
                                const EmbeddedGroup& m1bar, const EmbeddedGroup& m2);
// Same product from the per-factor Levi data of the odd orthogonal factors,
// listed in the order they appear in g2.
Rational c_nonstandard_quotient(const GroupType& g1bar, const GroupType& g2,
                                const std::vector<LeviDatum>& odd_levis);

}  // namespace wfl
