#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace wfl {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Base class for every error raised on mathematically invalid input.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "num/den", or just "num" for integers.
std::string to_string(const Rational& q);

// Accepts "a", "-a", "a/b".  Throws DomainError on malformed text or b == 0.
Rational parse_rational(const std::string& s);

// Checked 64-bit arithmetic; overflow throws DomainError.
long long checked_add(long long a, long long b);
long long checked_mul(long long a, long long b);

}  // namespace wfl
