#pragma once

#include "wfl/catalog.hpp"
#include "wfl/eigen.hpp"

#include <vector>

namespace wfl {

struct InvalidSemisimpleProfile : DomainError {
    using DomainError::DomainError;
};
struct UnsupportedFactor : DomainError {
    using DomainError::DomainError;
};

// Elliptic datum (m', m'') of the metaplectic factor Mp(2m).
struct EllipticDatumMeta {
    int m_prime = 0;
    int m_dblprime = 0;

    int m() const { return m_prime + m_dblprime; }
    auto operator<=>(const EllipticDatumMeta&) const = default;
};

std::vector<EllipticDatumMeta> elliptic_data_meta(int m);
// prod GL(n_i) x SO(2m'+1) x SO(2m''+1)
GroupType endoscopic_group_meta(const LeviDatum& levi, const EllipticDatumMeta& d);

// s0 with every GL component 1, times a sign per block of I.
struct SElement {
    EllipticDatumMeta base;
    std::vector<int> signs;

    auto operator<=>(const SElement&) const = default;
};

std::vector<SElement> e_set(const LeviDatum& levi, const EllipticDatumMeta& s0);

// Coordinates: block i of the Levi occupies consecutive coordinates in the
// order of levi.sizes, then the m coordinates of the metaplectic part (the
// first m' of them go with the first orthogonal factor).
struct GofS {
    int n_prime = 0;
    int n_dblprime = 0;
    GroupType group;
    EmbeddedGroup g_s;     // SO(2n'+1) x SO(2n''+1)
    EmbeddedGroup m_endo;  // M^! as a Levi of g_s
};

GofS g_of_s(const LeviDatum& levi, const SElement& s);
EmbeddedGroup metaplectic_levi(const LeviDatum& levi);  // prod GL(n_i) x Sp(2m)

// z_i = s_i on the blocks, and a trailing 1 for the metaplectic part.
std::vector<int> z_torsion(const SElement& s);

// Rational-valued eigenvalue data for a class in M^!: one multiset per block
// (GL eigenvalues) plus the two odd orthogonal multisets.
struct EndoClass {
    std::vector<Multiset<Rational>> blocks;
    Multiset<Rational> prime;
    Multiset<Rational> dblprime;
};

// Class in Sp(2n) reached through G[s], and through z[s] followed by M.
Multiset<Rational> mu1_via_gs(const EndoClass& c, const SElement& s);
Multiset<Rational> mu_via_levi(const EndoClass& c, const SElement& s);
bool correspond_mu1_check(const EndoClass& c, const SElement& s);

// [Z(M^!) : Z_meta(M)] / [Z(G[s]) : Z_meta(G)]
Rational i_meta(const LeviDatum& levi, const SElement& s);

// Semisimple s in the dual Sp(2n, C): labels a (not +-1, no two equal or
// inverse) with multiplicities, plus the multiplicities of +1 and -1.
struct SemisimpleProfile {
    std::vector<std::pair<Rational, int>> labels;
    int plus_count = 0;
    int minus_count = 0;
};

std::pair<LeviDatum, EllipticDatumMeta> datum_to_levi(const SemisimpleProfile& p);

struct SpEllipticDatum {
    int m_prime = 0;
    FactorType even_part;  // SO(2m'', class)
    auto operator<=>(const SpEllipticDatum&) const = default;
};
struct UEllipticDatum {
    int m_prime = 0;
    int m_dblprime = 0;
    auto operator<=>(const UEllipticDatum&) const = default;
};

std::vector<SpEllipticDatum> sp_elliptic_data(int m);
std::vector<UEllipticDatum> u_elliptic_data(int m);

// Endoscopic element given by a sign on every ambient coordinate, together
// with the form class used for the even orthogonal part of each symplectic
// factor (indexed by coordinate, only read on coordinates with sign -1).
struct ArthurElement {
    std::vector<int> s;
    std::vector<FormClass> even_form;
};

// L[s]: identity component of the centralizer of s in the dual of L.
EmbeddedGroup arthur_L_of_s(const EmbeddedGroup& L, const ArthurElement& s);
bool arthur_is_elliptic(const EmbeddedGroup& L, const ArthurElement& s);

// Elements of s0 Z(R)/Z(L) whose L[s] is elliptic, one canonical sign vector
// per class.
std::vector<ArthurElement> e_set_arthur(const EmbeddedGroup& L, const EmbeddedGroup& R,
                                        const ArthurElement& s0);
// Canonical representative of s modulo the sign part of Z(L).
ArthurElement arthur_canonical(const EmbeddedGroup& L, const ArthurElement& s);

// [Z(R[s]) : Z(R)] / [Z(L[s]) : Z(L)]
Rational i_standard(const EmbeddedGroup& R, const EmbeddedGroup& L, const ArthurElement& s);

}  // namespace wfl
