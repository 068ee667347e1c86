#include "wfl/nonstandard.hpp"

#include <algorithm>
#include <numeric>

namespace wfl {

namespace {

IntVec unit(int n, int i, long long c) {
    IntVec v(n, 0);
    v[i] = c;
    return v;
}

// +-e_i +- e_j for i < j among the given coordinates, and +-c e_i.
IntMat bc_coroots(int n, int first, int count, long long c) {
    IntMat out;
    for (int i = first; i < first + count; ++i) {
        for (int j = i + 1; j < first + count; ++j)
            for (int si : {1, -1})
                for (int sj : {1, -1}) {
                    IntVec v(n, 0);
                    v[i] = si;
                    v[j] = sj;
                    out.push_back(v);
                }
        out.push_back(unit(n, i, c));
        out.push_back(unit(n, i, -c));
    }
    return out;
}

}  // namespace

NonStdTriple build_triple(int n) {
    if (n < 1) throw DomainError("non-standard triple needs n >= 1");
    NonStdTriple t;
    t.n = n;
    t.coroots1 = bc_coroots(n, 0, n, 1);
    t.coroots2 = bc_coroots(n, 0, n, 2);
    t.X1 = IntLattice::full(n);
    IntMat gens{unit(n, 0, 2)};
    for (int i = 1; i < n; ++i) {
        IntVec v(n, 0);
        v[i - 1] = 1;
        v[i] = -1;
        gens.push_back(v);
    }
    t.X2 = IntLattice(n, gens);
    return t;
}

IntLattice coroot_span_levi(const NonStdTriple& t, const LeviDatum& levi, int side) {
    if (side != 1 && side != 2) throw DomainError("side must be 1 or 2");
    if (levi.n() != t.n) throw LayoutMismatch("Levi datum of rank " + std::to_string(levi.n()) + " in rank " + std::to_string(t.n));
    IntMat gens;
    int pos = 0;
    for (int k : levi.sizes) {
        for (int i = pos; i + 1 < pos + k; ++i) {
            IntVec v(t.n, 0);
            v[i] = 1;
            v[i + 1] = -1;
            gens.push_back(v);
        }
        pos += k;
    }
    for (auto& v : bc_coroots(t.n, pos, levi.m, side)) gens.push_back(v);
    return IntLattice(t.n, gens);
}

Rational c_nonstandard_raw(const NonStdTriple& t, const LeviDatum& levi) {
    IntLattice r1(t.n, t.coroots1), r2(t.n, t.coroots2);
    return lattice_index(r2, r1) /
           lattice_index(coroot_span_levi(t, levi, 2), coroot_span_levi(t, levi, 1));
}

Rational c_nonstandard_closed(int a, int core_rank) { return (a > 0 && core_rank == 0) ? Rational(1, 2) : Rational(1); }

Rational c_nonstandard_quotient(const GroupType& g1bar, const GroupType& g2, const std::vector<LeviDatum>& odd_levis) {
    GroupType n1 = normalize(g1bar), n2 = normalize(g2);
    std::vector<FactorType> expected;
    Rational c = 1;
    std::size_t next = 0;
    for (const auto& f : n2.factors()) {
        if (f.kind != Kind::SOodd) {
            expected.push_back(f);
            continue;
        }
        if (next >= odd_levis.size()) throw UnsupportedPairing("missing Levi datum for " + f.str());
        const LeviDatum& l = odd_levis[next++];
        if (l.n() != f.rank) throw UnsupportedPairing("Levi datum " + l.str() + " does not fit " + f.str());
        expected.push_back(FactorType::sp(f.rank));
        c *= c_nonstandard_raw(build_triple(f.rank), l);
    }
    if (next != odd_levis.size()) throw UnsupportedPairing("too many Levi data");
    if (GroupType(expected) != n1) throw UnsupportedPairing(n1.str() + " is not paired with " + n2.str());
    return c;
}

Rational c_nonstandard_quotient(const EmbeddedGroup& g1bar, const EmbeddedGroup& g2, const EmbeddedGroup& m1bar,
                                const EmbeddedGroup& m2) {
    if (bar(g2) != g1bar) throw UnsupportedPairing(g1bar.str() + " is not the partner of " + g2.str());
    if (bar(m2) != m1bar) throw UnsupportedPairing(m1bar.str() + " is not the partner of " + m2.str());
    GroupType t2 = g2.type();
    std::vector<LeviDatum> odd;
    for (const auto& f : g2.factors()) {
        if (f.type.kind != Kind::SOodd) continue;
        LeviDatum l;
        for (const auto& h : m2.factors()) {
            bool inside = std::all_of(h.coords.begin(), h.coords.end(), [&](int c) {
                return std::find(f.coords.begin(), f.coords.end(), c) != f.coords.end();
            });
            if (!inside) continue;
            if (h.type.kind == Kind::GL && h.type.degree == 1) l.sizes.push_back(h.type.rank);
            else if (h.type.kind != Kind::SOodd) throw UnsupportedPairing(h.type.str() + " is not a Levi factor of " + f.type.str());
        }
        std::sort(l.sizes.rbegin(), l.sizes.rend());
        l.m = f.type.rank - std::accumulate(l.sizes.begin(), l.sizes.end(), 0);
        odd.push_back(l);
    }
    return c_nonstandard_quotient(g1bar.type(), t2, odd);
}

}  // namespace wfl
