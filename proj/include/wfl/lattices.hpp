#pragma once

#include "wfl/rational.hpp"

#include <vector>

namespace wfl {

using IntVec = std::vector<long long>;
using IntMat = std::vector<IntVec>;  // row-major

struct NotCommensurable : DomainError {
    using DomainError::DomainError;
};
struct AmbientMismatch : DomainError {
    using DomainError::DomainError;
};
struct InclusionViolation : DomainError {
    using DomainError::DomainError;
};

// Sublattice of Z^N, always kept in row-style Hermite normal form.
class IntLattice {
public:
    IntLattice() = default;
    IntLattice(int ambient_rank, const IntMat& generators);

    static IntLattice zero(int n) { return IntLattice(n, {}); }
    static IntLattice full(int n);

    int ambient_rank() const { return n_; }
    int rank() const { return static_cast<int>(rows_.size()); }
    const IntMat& basis() const { return rows_; }

    bool contains(const IntVec& v) const;
    bool contains(const IntLattice& other) const;

    friend bool operator==(const IntLattice&, const IntLattice&) = default;

private:
    int n_ = 0;
    IntMat rows_;
};

struct SmithResult {
    IntMat U, D, V;  // U * M * V = D, U and V unimodular
    IntMat V_inv;
    std::vector<long long> diagonal;  // d_1 | d_2 | ... (min(rows, cols) entries, zeros last)
};

IntMat hermite_rows(int ncols, IntMat m);
IntLattice hermite_form(const IntLattice& L);
SmithResult smith_form(const IntMat& m, int ncols);

IntMat mat_mul(const IntMat& a, const IntMat& b, int inner, int ncols);

IntLattice lattice_sum(const IntLattice& a, const IntLattice& b);
IntLattice lattice_intersect(const IntLattice& a, const IntLattice& b);
IntLattice saturation(const IntLattice& L);
// Integer vectors x with x . v = 0 for all v in L.
IntLattice orthogonal_lattice(const IntLattice& L);
// [saturation(L) : L]
BigInt saturation_index(const IntLattice& L);

// [L1 : L2] := [L1 : L1 n L2] / [L2 : L1 n L2]
Rational lattice_index(const IntLattice& L1, const IntLattice& L2);

class FiniteAbelianGroup {
public:
    FiniteAbelianGroup() = default;
    // Accepts arbitrary cyclic orders; normalizes to invariant factors.
    explicit FiniteAbelianGroup(const std::vector<long long>& cyclic_orders);

    const std::vector<long long>& invariant_factors() const { return f_; }
    BigInt order() const;
    bool trivial() const { return f_.empty(); }

    friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;

private:
    std::vector<long long> f_;
};

// Subgroup of (C^x)^N cut out by a lattice of characters.
class DiagSubgroup {
public:
    DiagSubgroup() = default;
    explicit DiagSubgroup(const IntLattice& vanishing_chars) : k_(vanishing_chars) {}

    static DiagSubgroup torus(int n) { return DiagSubgroup(IntLattice::zero(n)); }
    static DiagSubgroup trivial(int n) { return DiagSubgroup(IntLattice::full(n)); }
    // Subgroup generated by the elements exp(2 pi i a / e), a in each row.
    static DiagSubgroup from_elements(int n, long long e, const IntMat& exponents);

    int ambient_rank() const { return k_.ambient_rank(); }
    const IntLattice& vanishing_chars() const { return k_; }
    int dimension() const { return ambient_rank() - k_.rank(); }
    bool is_finite() const { return dimension() == 0; }
    // this contains other
    bool contains(const DiagSubgroup& other) const { return other.k_.contains(k_); }

    friend bool operator==(const DiagSubgroup&, const DiagSubgroup&) = default;

private:
    IntLattice k_;
};

DiagSubgroup diag_intersect(const DiagSubgroup& a, const DiagSubgroup& b);
DiagSubgroup diag_product(const DiagSubgroup& a, const DiagSubgroup& b);
DiagSubgroup diag_identity_component(const DiagSubgroup& d);
FiniteAbelianGroup diag_component_group(const DiagSubgroup& d);
Rational diag_index(const DiagSubgroup& d1, const DiagSubgroup& d2);
bool arthur_product_check(const DiagSubgroup& h, const DiagSubgroup& s, const DiagSubgroup& s0);

}  // namespace wfl
