#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "wfl/lattices.hpp"

using namespace wfl;

namespace {

IntMat transpose(const IntMat& m, int ncols) {
    IntMat t(ncols, IntVec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (int j = 0; j < ncols; ++j) t[j][i] = m[i][j];
    return t;
}

// [Z^N : L] for full-rank L, counting lattice points in a box of side b with b Z^N in L.
Rational box_index(const IntLattice& L, long long b) {
    const int n = L.ambient_rank();
    long long total = 1, hits = 0;
    for (int i = 0; i < n; ++i) total *= b;
    IntVec x(n, 0);
    for (long long c = 0; c < total; ++c) {
        long long r = c;
        for (int i = 0; i < n; ++i) {
            x[i] = r % b;
            r /= b;
        }
        if (oracle::in_span_independent(L.basis(), x)) ++hits;
    }
    return Rational(total, hits);
}

}  // namespace

TEST_CASE("hermite form canonical examples") {
    CHECK(IntLattice(2, {{2, 2}, {0, 2}}).basis() == IntMat{{2, 0}, {0, 2}});
    CHECK(IntLattice(2, {}).basis().empty());
    CHECK(IntLattice(2, {{1, 0}, {0, 1}, {1, 1}}).basis() == IntMat{{1, 0}, {0, 1}});
    CHECK(IntLattice(3, {{0, 0, 0}}).rank() == 0);
    CHECK(IntLattice(2, {{4, 6}, {6, 9}}) == IntLattice(2, {{2, 3}}));
}

TEST_CASE("smith form examples and reconstruction") {
    auto s = smith_form({{2, 0}, {0, 3}}, 2);
    CHECK(s.diagonal == std::vector<long long>{1, 6});
    CHECK(smith_form({{1, 0}, {0, 1}}, 2).diagonal == std::vector<long long>{1, 1});
    CHECK(smith_form({{0}}, 1).diagonal == std::vector<long long>{0});

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> d(-5, 5);
    for (int trial = 0; trial < 200; ++trial) {
        int r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
        IntMat m(r, IntVec(c));
        for (auto& row : m)
            for (auto& x : row) x = d(rng);
        auto sm = smith_form(m, c);
        CHECK(mat_mul(mat_mul(sm.U, m, r, c), sm.V, c, c) == sm.D);
        CHECK(mat_mul(sm.V, sm.V_inv, c, c) == mat_mul(sm.V_inv, sm.V, c, c));
        IntMat id(c, IntVec(c, 0));
        for (int i = 0; i < c; ++i) id[i][i] = 1;
        CHECK(mat_mul(sm.V, sm.V_inv, c, c) == id);
        for (std::size_t i = 0; i + 1 < sm.diagonal.size(); ++i) {
            long long a = sm.diagonal[i], b = sm.diagonal[i + 1];
            CHECK(a >= 0);
            if (a == 0) CHECK(b == 0);
            else CHECK(b % a == 0);
        }
        (void)transpose;
    }
}

TEST_CASE("lattice index with the commensurable convention") {
    IntLattice z2 = IntLattice::full(2);
    IntLattice even(2, {{1, 1}, {2, 0}});
    CHECK(lattice_index(z2, even) == 2);
    CHECK(lattice_index(even, z2) == Rational(1, 2));
    CHECK(lattice_index(even, even) == 1);
    IntLattice a(2, {{2, 0}, {0, 3}}), b(2, {{1, 0}, {0, 6}});
    CHECK(lattice_index(a, b) == 1);
    CHECK(lattice_intersect(a, b) == IntLattice(2, {{2, 0}, {0, 6}}));
    CHECK_THROWS_AS(lattice_index(IntLattice(2, {{1, 0}}), IntLattice(2, {{0, 1}})), NotCommensurable);
}

TEST_CASE("lattice index agrees with point counting") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long long> d(-3, 3);
    int done = 0;
    while (done < 60) {
        IntMat g1(2, IntVec(2)), g2(2, IntVec(2));
        for (auto* g : {&g1, &g2})
            for (auto& r : *g)
                for (auto& x : r) x = d(rng);
        IntLattice l1(2, g1), l2(2, g2);
        if (l1.rank() < 2 || l2.rank() < 2) continue;
        BigInt d1 = saturation_index(l1), d2 = saturation_index(l2);
        if (d1 > 40 || d2 > 40) continue;
        long long b = static_cast<long long>(d1 * d2);
        CHECK(lattice_index(l1, l2) == box_index(l2, b) / box_index(l1, b));
        ++done;
    }
}

TEST_CASE("sum and intersection against membership") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long long> d(-3, 3);
    for (int trial = 0; trial < 100; ++trial) {
        IntMat g1(2, IntVec(3)), g2(2, IntVec(3));
        for (auto* g : {&g1, &g2})
            for (auto& r : *g)
                for (auto& x : r) x = d(rng);
        IntLattice l1(3, g1), l2(3, g2);
        IntLattice s = lattice_sum(l1, l2), i = lattice_intersect(l1, l2);
        CHECK(s.contains(l1));
        CHECK(s.contains(l2));
        CHECK(l1.contains(i));
        CHECK(l2.contains(i));
        for (long long x = -4; x <= 4; ++x)
            for (long long y = -4; y <= 4; ++y)
                for (long long z = -4; z <= 4; ++z) {
                    IntVec v{x, y, z};
                    bool in_both = oracle::in_span_independent(l1.basis(), v) &&
                                   oracle::in_span_independent(l2.basis(), v);
                    CHECK(i.contains(v) == in_both);
                }
    }
}

TEST_CASE("saturation and orthogonal lattice") {
    IntLattice l(3, {{2, 4, 0}, {0, 0, 3}});
    CHECK(saturation(l) == IntLattice(3, {{1, 2, 0}, {0, 0, 1}}));
    CHECK(saturation_index(l) == 6);
    IntLattice o = orthogonal_lattice(l);
    CHECK(o == IntLattice(3, {{2, -1, 0}}));
    CHECK(orthogonal_lattice(IntLattice::zero(2)) == IntLattice::full(2));
}

TEST_CASE("finite abelian group normalization") {
    CHECK(FiniteAbelianGroup({2, 3}).invariant_factors() == std::vector<long long>{6});
    CHECK(FiniteAbelianGroup({2, 2}).invariant_factors() == std::vector<long long>{2, 2});
    CHECK(FiniteAbelianGroup({1, 1}).trivial());
    CHECK(FiniteAbelianGroup({4, 6}).order() == 24);
}

TEST_CASE("diagonalizable subgroups: worked cases") {
    // mu_2 x C^x
    DiagSubgroup d(IntLattice(2, {{2, 0}}));
    CHECK(diag_component_group(d).invariant_factors() == std::vector<long long>{2});
    CHECK(diag_identity_component(d) == DiagSubgroup(IntLattice(2, {{1, 0}})));
    CHECK(diag_component_group(DiagSubgroup::torus(3)).trivial());
    DiagSubgroup c(IntLattice(2, {{2, 0}, {0, 3}}));
    CHECK(diag_component_group(c).invariant_factors() == std::vector<long long>{6});
    CHECK(diag_identity_component(c) == DiagSubgroup::trivial(2));

    DiagSubgroup mu2diag(IntLattice(2, {{1, -1}, {2, 0}}));
    DiagSubgroup first(IntLattice(2, {{0, 1}}));
    CHECK(diag_intersect(mu2diag, first) == DiagSubgroup::trivial(2));
    CHECK(diag_intersect(d, d) == d);
    DiagSubgroup zz(IntLattice(2, {{1, -1}})), zinv(IntLattice(2, {{1, 1}}));
    CHECK(diag_product(zz, zinv) == DiagSubgroup::torus(2));
    CHECK(diag_intersect(zz, zinv) == mu2diag);

    DiagSubgroup mu2sq(IntLattice(2, {{2, 0}, {0, 2}}));
    CHECK(diag_index(mu2sq, DiagSubgroup::trivial(2)) == 4);
    CHECK(diag_index(d, d) == 1);
    DiagSubgroup torus_mu2(IntLattice(2, {{0, 2}}));
    CHECK(diag_index(torus_mu2, first) == 2);
    CHECK(diag_index(first, torus_mu2) == Rational(1, 2));
    CHECK_THROWS_AS(diag_index(d, DiagSubgroup::trivial(2)), NotCommensurable);

    CHECK(arthur_product_check(DiagSubgroup(IntLattice(2, {{2, 0}, {0, 1}})), d,
                               DiagSubgroup(IntLattice(2, {{1, 0}}))));
    DiagSubgroup mu2(IntLattice(1, {{2}}));
    CHECK_FALSE(arthur_product_check(DiagSubgroup::trivial(1), mu2, DiagSubgroup::trivial(1)));
    CHECK_THROWS_AS(arthur_product_check(DiagSubgroup::torus(1), mu2, DiagSubgroup::trivial(1)),
                    InclusionViolation);
}

TEST_CASE("ambient rank zero is legal") {
    DiagSubgroup t = DiagSubgroup::torus(0);
    CHECK(t == DiagSubgroup::trivial(0));
    CHECK(diag_index(t, t) == 1);
    CHECK(diag_component_group(t).trivial());
}

TEST_CASE("from_elements matches enumeration") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long long> d(0, 3);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 1 + trial % 3;
        IntMat gens(1 + trial % 2, IntVec(n));
        for (auto& r : gens)
            for (auto& x : r) x = d(rng);
        DiagSubgroup g = DiagSubgroup::from_elements(n, 4, gens);
        auto elts = oracle::elements(n, 4, g.vanishing_chars().basis());
        std::set<IntVec> closure{IntVec(n, 0)};
        while (true) {
            auto next = oracle::product_set(closure, {gens.begin(), gens.end()}, 4);
            next.insert(closure.begin(), closure.end());
            if (next == closure) break;
            closure = next;
        }
        CHECK(elts == closure);
    }
}

TEST_CASE("diag operations against element enumeration") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + trial % 4;
        long long e = 2 + trial % 3;
        auto c1 = oracle::random_finite_chars(rng, n, e, trial % 3);
        auto c2 = oracle::random_finite_chars(rng, n, e, (trial / 3) % 3);
        DiagSubgroup d1(IntLattice(n, c1)), d2(IntLattice(n, c2));
        auto e1 = oracle::elements(n, e, c1), e2 = oracle::elements(n, e, c2);
        CHECK(oracle::elements(n, e, diag_intersect(d1, d2).vanishing_chars().basis()) ==
              oracle::intersect_set(e1, e2));
        CHECK(oracle::elements(n, e, diag_product(d1, d2).vanishing_chars().basis()) ==
              oracle::product_set(e1, e2, e));
        CHECK(diag_index(d1, d2) == Rational(e1.size(), e2.size()));
        CHECK(diag_component_group(d1).order() == e1.size());
    }
}
