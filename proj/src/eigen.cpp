#include "wfl/eigen.hpp"

namespace wfl {

namespace {

Rational frac_part(const Rational& e) {
    BigInt num = boost::multiprecision::numerator(e), den = boost::multiprecision::denominator(e);
    BigInt r = num % den;
    if (r < 0) r += den;
    return Rational(r, den);
}

}  // namespace

RootOfUnity::RootOfUnity(const Rational& exponent) : e_(frac_part(exponent)) {}

RootOfUnity RootOfUnity::parse(const std::string& s) { return RootOfUnity(parse_rational(s)); }

long long RootOfUnity::order() const { return static_cast<long long>(boost::multiprecision::denominator(e_)); }

Multiset<Rational> correspond_lie(const Multiset<Rational>& prime, const Multiset<Rational>& dblprime) {
    Multiset<Rational> out;
    for (const auto* side : {&prime, &dblprime}) {
        if (side->size() % 2 == 0) throw InvariantViolation("odd orthogonal side of even size");
        Multiset<Rational> neg;
        for (const auto& x : *side) neg.push_back(-x);
        if (sorted(neg) != sorted(*side)) throw InvariantViolation("multiset not closed under negation");
        auto it = std::find(side->begin(), side->end(), Rational(0));
        if (it == side->end()) throw InvariantViolation("odd orthogonal side without 0");
        bool dropped = false;
        for (const auto& x : *side) {
            if (!dropped && x == 0) {
                dropped = true;
                continue;
            }
            out.push_back(x);
        }
    }
    return sorted(out);
}

}  // namespace wfl
