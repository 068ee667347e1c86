#pragma once

#include "wfl/lattices.hpp"
#include "wfl/qspaces.hpp"

#include <compare>
#include <string>
#include <vector>

namespace wfl {

struct LayoutMismatch : DomainError {
    using DomainError::DomainError;
};
struct EmbeddingInvalid : DomainError {
    using DomainError::DomainError;
};

enum class Kind { GL, U, Sp, SOodd, SOeven };
enum class FormClass { split, unram_nonsplit, ramified };

std::string to_string(FormClass f);
FormClass parse_form_class(const std::string& s);

// One classical factor.  `rank` is k for GL(k) and U(k), a for Sp(2a) and
// SO(2a+1), b for SO(2b).  `degree` is the extension degree for GL and the
// degree of the base field for U.
struct FactorType {
    Kind kind = Kind::GL;
    int rank = 0;
    int degree = 1;
    bool ramified = false;
    FormClass form = FormClass::split;

    static FactorType gl(int k, int d = 1, bool ram = false) { return {Kind::GL, k, d, ram, FormClass::split}; }
    static FactorType u(int k, int d = 1, bool ram = false) { return {Kind::U, k, d, ram, FormClass::split}; }
    static FactorType sp(int a) { return {Kind::Sp, a, 1, false, FormClass::split}; }
    static FactorType so_odd(int a) { return {Kind::SOodd, a, 1, false, FormClass::split}; }
    static FactorType so_even(int b, FormClass f) { return {Kind::SOeven, b, 1, false, b == 0 ? FormClass::split : f}; }

    // Number of dual-torus coordinates.  U(k) over a base of degree d uses d*k.
    int width() const;
    bool is_trivial() const { return rank == 0; }
    // SO(2) split is a GL(1) in disguise.
    bool is_split_torus_so2() const { return kind == Kind::SOeven && rank == 1 && form == FormClass::split; }
    bool is_classical() const { return kind != Kind::GL && !is_split_torus_so2(); }
    int a_dimension() const { return (kind == Kind::GL || is_split_torus_so2()) ? 1 : 0; }
    std::string str() const;

    auto operator<=>(const FactorType&) const = default;
};

// Product of factors, kept sorted.
class GroupType {
public:
    GroupType() = default;
    explicit GroupType(std::vector<FactorType> factors);

    const std::vector<FactorType>& factors() const { return f_; }
    int width() const;
    int a_dimension() const;
    std::string str() const;

    auto operator<=>(const GroupType&) const = default;

private:
    std::vector<FactorType> f_;
};

// Drops rank-0 factors and rewrites SO(2) split as GL(1).
GroupType normalize(const GroupType& g);
bool same_group(const GroupType& a, const GroupType& b);
GroupType bar(const GroupType& g);
bool is_unramified(const GroupType& g);

// Levi of Sp(2n): GL(n_1) x ... x GL(n_k) x Sp(2m), sizes sorted descending.
struct LeviDatum {
    std::vector<int> sizes;
    int m = 0;

    int n() const;
    std::string str() const;
    auto operator<=>(const LeviDatum&) const = default;
};

std::vector<LeviDatum> levi_data(int n);
// 2^|I| times the factorials of the multiplicities of equal block sizes.
BigInt weyl_relative_order(const LeviDatum& d);
GroupType levi_group_type(const LeviDatum& d);

// A factor placed on explicit ambient coordinates.  For GL factors `signs`
// orients each coordinate: the center acts by z^sign and the a-vector is
// sum sign_j e_j.  Other kinds ignore signs.
struct EmbeddedFactor {
    FactorType type;
    std::vector<int> coords;
    std::vector<int> signs;

    auto operator<=>(const EmbeddedFactor&) const = default;
};

class EmbeddedGroup {
public:
    EmbeddedGroup() = default;
    // Validates widths and disjointness; drops rank-0 factors; canonicalizes.
    EmbeddedGroup(int ambient, std::vector<EmbeddedFactor> factors);

    int ambient() const { return n_; }
    const std::vector<EmbeddedFactor>& factors() const { return f_; }
    GroupType type() const;
    std::vector<int> covered() const;
    std::string str() const;

    auto operator<=>(const EmbeddedGroup&) const = default;

private:
    int n_ = 0;
    std::vector<EmbeddedFactor> f_;
};

EmbeddedGroup standard_embedding(const GroupType& g);

// Gamma-fixed center of the dual group, and its identity component.
DiagSubgroup dual_center(const EmbeddedGroup& g);
DiagSubgroup dual_center0(const EmbeddedGroup& g);
// Designated center of a metaplectic-type group prod GL x Mp: C^x per GL
// block, trivial on the metaplectic part.  Only GL and Sp factors allowed.
DiagSubgroup metaplectic_center(const EmbeddedGroup& g);

QSubspace a_space(const EmbeddedGroup& g);
EmbeddedGroup bar(const EmbeddedGroup& g);

// Standard Levi subgroups, one per conjugacy class.
std::vector<EmbeddedGroup> levi_enumerate(const EmbeddedGroup& g);
// Every Levi of g containing r (same torus, refined factors).
std::vector<EmbeddedGroup> levis_containing(const EmbeddedGroup& g, const EmbeddedGroup& r);

}  // namespace wfl
