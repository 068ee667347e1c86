// Brute-force reference implementations used by the tests.  Nothing here
// calls into the normal-form code of the library.
#pragma once

#include "wfl/lattices.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using wfl::IntMat;
using wfl::IntVec;
using wfl::Rational;

// Membership of v in the Z-span of gens, by rational elimination followed by
// an integrality check of the (unique) coordinates.  gens must be independent.
inline bool in_span_independent(const IntMat& gens, const IntVec& v) {
    const std::size_t n = v.size(), k = gens.size();
    // augmented system: sum_j c_j gens[j] = v, written as n x (k+1)
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(k + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) a[i][j] = gens[j][i];
        a[i][k] = v[i];
    }
    std::vector<std::size_t> pivcol;
    std::size_t r = 0;
    for (std::size_t c = 0; c < k && r < n; ++c) {
        std::size_t p = r;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c] / a[r][c];
            for (std::size_t j = c; j <= k; ++j) a[i][j] -= f * a[r][j];
        }
        pivcol.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < n; ++i)
        if (a[i][k] != 0) return false;
    for (std::size_t i = 0; i < r; ++i) {
        Rational c = a[i][k] / a[i][pivcol[i]];
        if (boost::multiprecision::denominator(c) != 1) return false;
    }
    return true;
}

// Elements (as exponent vectors mod e) of the subgroup of mu_e^N on which all
// the given characters vanish.
inline std::set<IntVec> elements(int n, long long e, const IntMat& chars) {
    std::set<IntVec> out;
    IntVec a(n, 0);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == n) {
            for (const auto& chi : chars) {
                long long s = 0;
                for (int i = 0; i < n; ++i) s += chi[i] * a[i];
                if (((s % e) + e) % e != 0) return;
            }
            out.insert(a);
            return;
        }
        for (long long x = 0; x < e; ++x) {
            a[pos] = x;
            rec(pos + 1);
        }
    };
    rec(0);
    return out;
}

inline std::set<IntVec> product_set(const std::set<IntVec>& a, const std::set<IntVec>& b, long long e) {
    std::set<IntVec> out;
    for (const auto& x : a)
        for (const auto& y : b) {
            IntVec z(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) z[i] = (x[i] + y[i]) % e;
            out.insert(z);
        }
    return out;
}

inline std::set<IntVec> intersect_set(const std::set<IntVec>& a, const std::set<IntVec>& b) {
    std::set<IntVec> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.begin()));
    return out;
}

// Random character set cutting out a finite subgroup of mu_e^N: always
// contains e*Z^N.
inline IntMat random_finite_chars(std::mt19937_64& rng, int n, long long e, int extra) {
    IntMat chars;
    for (int i = 0; i < n; ++i) {
        IntVec v(n, 0);
        v[i] = e;
        chars.push_back(v);
    }
    std::uniform_int_distribution<long long> d(-2, 2);
    for (int k = 0; k < extra; ++k) {
        IntVec v(n);
        for (auto& x : v) x = d(rng);
        chars.push_back(v);
    }
    return chars;
}

}  // namespace oracle
