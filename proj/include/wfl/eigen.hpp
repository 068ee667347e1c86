#pragma once

#include "wfl/rational.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace wfl {

struct InvariantViolation : DomainError {
    using DomainError::DomainError;
};

// exp(2 pi i e) with e kept reduced in [0, 1).
class RootOfUnity {
public:
    RootOfUnity() = default;
    explicit RootOfUnity(const Rational& exponent);
    static RootOfUnity one() { return RootOfUnity(); }
    static RootOfUnity minus_one() { return RootOfUnity(Rational(1, 2)); }
    static RootOfUnity parse(const std::string& s);  // "j/N"

    const Rational& exponent() const { return e_; }
    long long order() const;
    bool is_one() const { return e_ == 0; }
    bool is_minus_one() const { return e_ == Rational(1, 2); }
    RootOfUnity inverse() const { return RootOfUnity(-e_); }
    RootOfUnity negate() const { return RootOfUnity(e_ + Rational(1, 2)); }
    RootOfUnity times(const RootOfUnity& o) const { return RootOfUnity(e_ + o.e_); }
    RootOfUnity frobenius(long long q) const { return RootOfUnity(e_ * q); }
    std::string str() const { return to_string(e_); }

    friend bool operator==(const RootOfUnity& a, const RootOfUnity& b) { return a.e_ == b.e_; }
    friend bool operator!=(const RootOfUnity& a, const RootOfUnity& b) { return a.e_ != b.e_; }
    friend bool operator<(const RootOfUnity& a, const RootOfUnity& b) { return a.e_ < b.e_; }

private:
    Rational e_ = 0;
};

// Multiplicative scalar operations shared by rationals and roots of unity.
inline Rational mult_inverse(const Rational& x) { return 1 / x; }
inline Rational mult_negate(const Rational& x) { return -x; }
inline bool mult_is_one(const Rational& x) { return x == 1; }
inline RootOfUnity mult_inverse(const RootOfUnity& x) { return x.inverse(); }
inline RootOfUnity mult_negate(const RootOfUnity& x) { return x.negate(); }
inline bool mult_is_one(const RootOfUnity& x) { return x.is_one(); }

template <class T>
using Multiset = std::vector<T>;

template <class T>
Multiset<T> sorted(Multiset<T> m) {
    std::sort(m.begin(), m.end());
    return m;
}

template <class T>
bool inversion_closed(const Multiset<T>& m) {
    Multiset<T> inv;
    for (const auto& x : m) inv.push_back(mult_inverse(x));
    return sorted(inv) == sorted(m);
}

// Eigenvalues of a semisimple class in SO(2k+1): inversion closed, odd size, contains 1.
template <class T>
void check_odd_orthogonal(const Multiset<T>& m) {
    if (m.size() % 2 == 0) throw InvariantViolation("odd orthogonal multiset of even size");
    if (std::none_of(m.begin(), m.end(), [](const T& x) { return mult_is_one(x); }))
        throw InvariantViolation("odd orthogonal multiset without eigenvalue 1");
    if (!inversion_closed(m)) throw InvariantViolation("multiset not closed under inversion");
}

template <class T>
void check_symplectic(const Multiset<T>& m) {
    if (m.size() % 2) throw InvariantViolation("symplectic multiset of odd size");
    if (!inversion_closed(m)) throw InvariantViolation("multiset not closed under inversion");
}

template <class T>
Multiset<T> drop_one_unit(Multiset<T> m) {
    auto it = std::find_if(m.begin(), m.end(), [](const T& x) { return mult_is_one(x); });
    if (it == m.end()) throw InvariantViolation("no eigenvalue 1 to drop");
    m.erase(it);
    return m;
}

// Eigenvalue correspondence SO(2m'+1) x SO(2m''+1) -> Sp(2m): keep the first
// side, negate the second, drop one eigenvalue 1 from each.
template <class T>
Multiset<T> correspond_mu(const Multiset<T>& prime, const Multiset<T>& dblprime) {
    check_odd_orthogonal(prime);
    check_odd_orthogonal(dblprime);
    Multiset<T> out = drop_one_unit(prime);
    for (const auto& x : drop_one_unit(dblprime)) out.push_back(mult_negate(x));
    return sorted(out);
}

// Additive version on the Lie algebra: negation closed, odd sides contain 0.
Multiset<Rational> correspond_lie(const Multiset<Rational>& prime, const Multiset<Rational>& dblprime);

template <class T>
std::string multiset_str(const Multiset<T>& m) {
    std::string s = "{";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s += ",";
        if constexpr (std::is_same_v<T, Rational>) s += to_string(m[i]);
        else s += m[i].str();
    }
    return s + "}";
}

}  // namespace wfl
