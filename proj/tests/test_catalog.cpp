#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "wfl/catalog.hpp"

#include <algorithm>
#include <map>
#include <set>

using namespace wfl;

namespace {

std::set<std::vector<int>> brute_levi_sizes(int n) {
    std::set<std::vector<int>> out;
    // every sequence with entries in 1..n and sum <= n, sorted
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int left) {
        std::vector<int> s = cur;
        std::sort(s.rbegin(), s.rend());
        out.insert(s);
        for (int p = 1; p <= left; ++p) {
            cur.push_back(p);
            rec(left - p);
            cur.pop_back();
        }
    };
    rec(n);
    return out;
}

long long brute_weyl_order(const std::vector<int>& sizes) {
    std::vector<int> perm(sizes.size());
    std::iota(perm.begin(), perm.end(), 0);
    long long count = 0;
    do {
        bool ok = true;
        for (std::size_t i = 0; i < perm.size(); ++i) ok = ok && sizes[perm[i]] == sizes[i];
        count += ok;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count << sizes.size();
}

// Flats of a root arrangement on the block coordinates y_1..y_r of a_R, pushed
// into the ambient through the block a-vectors.
std::set<QSubspace> flats(int n, const QMat& block_vectors, bool short_roots, bool type_a) {
    const int r = static_cast<int>(block_vectors.size());
    QMat roots;
    for (int i = 0; i < r; ++i) {
        for (int j = i + 1; j < r; ++j) {
            QVec a(r, 0);
            a[i] = 1;
            a[j] = -1;
            roots.push_back(a);
            if (!type_a) {
                a[j] = 1;
                roots.push_back(a);
            }
        }
        if (short_roots) {
            QVec a(r, 0);
            a[i] = 1;
            roots.push_back(a);
        }
    }
    std::set<QSubspace> out;
    for (unsigned long mask = 0; mask < (1ul << roots.size()); ++mask) {
        QMat eq;
        for (std::size_t k = 0; k < roots.size(); ++k)
            if (mask >> k & 1) eq.push_back(roots[k]);
        // solve eq * c = 0 by brute kernel
        QMat red = rref(r, eq);
        std::vector<int> piv;
        for (const auto& row : red) {
            int p = 0;
            while (row[p] == 0) ++p;
            piv.push_back(p);
        }
        QMat span;
        for (int f = 0; f < r; ++f) {
            if (std::find(piv.begin(), piv.end(), f) != piv.end()) continue;
            QVec c(r, 0);
            c[f] = 1;
            for (std::size_t k = 0; k < red.size(); ++k) c[piv[k]] = -red[k][f];
            QVec v(n, 0);
            for (int b = 0; b < r; ++b)
                for (int t = 0; t < n; ++t) v[t] += c[b] * block_vectors[b][t];
            span.push_back(v);
        }
        out.insert(QSubspace(n, span));
    }
    return out;
}

std::set<QSubspace> levi_a_spaces(const EmbeddedGroup& g, const EmbeddedGroup& r) {
    std::set<QSubspace> out;
    auto ls = levis_containing(g, r);
    for (const auto& l : ls) out.insert(a_space(l));
    CHECK(out.size() == ls.size());
    return out;
}

QMat block_vectors(const EmbeddedGroup& r) {
    QMat out;
    for (const auto& f : r.factors()) {
        if (!f.type.a_dimension()) continue;
        QVec v(r.ambient(), 0);
        for (std::size_t j = 0; j < f.coords.size(); ++j) v[f.coords[j]] = f.signs[j];
        out.push_back(v);
    }
    return out;
}

EmbeddedGroup single(FactorType t) { return standard_embedding(GroupType({t})); }

// Minimal Levi of a single factor: the last entry of the standard list has
// the most GL blocks.
EmbeddedGroup minimal_levi(const EmbeddedGroup& g) {
    auto ls = levi_enumerate(g);
    return *std::max_element(ls.begin(), ls.end(), [](const EmbeddedGroup& a, const EmbeddedGroup& b) {
        return a.type().a_dimension() < b.type().a_dimension();
    });
}

std::set<IntVec> elts(const DiagSubgroup& d, long long e) {
    return oracle::elements(d.ambient_rank(), e, d.vanishing_chars().basis());
}

}  // namespace

TEST_CASE("levi data examples and counts") {
    CHECK(levi_data(0).size() == 1);
    CHECK(levi_data(1).size() == 2);
    auto d2 = levi_data(2);
    REQUIRE(d2.size() == 4);
    std::set<std::pair<std::vector<int>, int>> got;
    for (auto& d : d2) got.insert({d.sizes, d.m});
    CHECK(got == std::set<std::pair<std::vector<int>, int>>{{{}, 2}, {{1}, 1}, {{1, 1}, 0}, {{2}, 0}});
    for (int n = 0; n <= 8; ++n) {
        std::set<std::vector<int>> mine;
        for (auto& d : levi_data(n)) {
            CHECK(d.n() == n);
            mine.insert(d.sizes);
        }
        CHECK(mine == brute_levi_sizes(n));
    }
}

TEST_CASE("relative Weyl orders") {
    CHECK(weyl_relative_order({{1, 1}, 3}) == 8);
    CHECK(weyl_relative_order({{}, 4}) == 1);
    CHECK(weyl_relative_order({{2, 1}, 0}) == 4);
    for (int n = 0; n <= 6; ++n)
        for (auto& d : levi_data(n)) CHECK(weyl_relative_order(d) == brute_weyl_order(d.sizes));
}

TEST_CASE("group types, bar and ramification") {
    GroupType a({FactorType::so_odd(2), FactorType::u(2)});
    CHECK(bar(a) == GroupType({FactorType::sp(2), FactorType::u(2)}));
    GroupType b({FactorType::gl(2), FactorType::sp(1)});
    CHECK(bar(b) == b);
    CHECK(bar(GroupType({FactorType::so_odd(0)})).factors().empty());
    CHECK(is_unramified(GroupType({FactorType::sp(2), FactorType::so_odd(1), FactorType::so_even(2, FormClass::split)})));
    CHECK_FALSE(is_unramified(GroupType({FactorType::u(1, 1, true)})));
    CHECK_FALSE(is_unramified(GroupType({FactorType::so_even(2, FormClass::ramified)})));
    CHECK(same_group(GroupType({FactorType::so_even(1, FormClass::split), FactorType::sp(0)}),
                     GroupType({FactorType::gl(1)})));
    CHECK(GroupType({FactorType::gl(2, 3)}).a_dimension() == 1);
    CHECK(levi_group_type({{2, 1}, 1}).a_dimension() == 2);
    CHECK(GroupType({FactorType::sp(3)}).a_dimension() == 0);
    CHECK_THROWS_AS(GroupType({FactorType::gl(0)}), DomainError);
}

TEST_CASE("dual centers") {
    auto g = standard_embedding(GroupType({FactorType::gl(1), FactorType::so_odd(1)}));
    DiagSubgroup z = dual_center(g);
    CHECK(z == DiagSubgroup(IntLattice(2, {{0, 2}})));
    CHECK(dual_center0(g) == DiagSubgroup(IntLattice(2, {{0, 1}})));
    CHECK(diag_component_group(z).invariant_factors() == std::vector<long long>{2});
    CHECK(dual_center(single(FactorType::sp(3))) == DiagSubgroup::trivial(3));
    CHECK(dual_center(single(FactorType::u(2, 2))) == DiagSubgroup(IntLattice(4, {{1, -1, 0, 0}, {1, 0, -1, 0}, {1, 0, 0, -1}, {2, 0, 0, 0}})));
    auto m = standard_embedding(levi_group_type({{1, 1}, 1}));
    CHECK(metaplectic_center(m) == DiagSubgroup(IntLattice(3, {{0, 0, 1}})));
    CHECK_THROWS_AS(metaplectic_center(single(FactorType::so_odd(1))), DomainError);
    // oriented GL: t_0 = z, t_1 = z^-1
    EmbeddedGroup o(2, {{FactorType::gl(2), {0, 1}, {1, -1}}});
    CHECK(elts(dual_center(o), 4) == std::set<IntVec>{{0, 0}, {1, 3}, {2, 2}, {3, 1}});
    CHECK(a_space(o) == QSubspace(2, {{1, -1}}));
    CHECK_THROWS_AS(EmbeddedGroup(2, {{FactorType::gl(2), {0, 0}, {}}}), LayoutMismatch);
    CHECK_THROWS_AS(EmbeddedGroup(2, {{FactorType::sp(1), {0, 1}, {}}}), LayoutMismatch);
}

TEST_CASE("levi enumeration examples") {
    auto sp4 = levi_enumerate(single(FactorType::sp(2)));
    std::set<GroupType> types;
    for (auto& l : sp4) types.insert(l.type());
    CHECK(types == std::set<GroupType>{GroupType({FactorType::sp(2)}),
                                       GroupType({FactorType::gl(1), FactorType::sp(1)}),
                                       GroupType({FactorType::gl(2)}),
                                       GroupType({FactorType::gl(1), FactorType::gl(1)})});
    CHECK(sp4.size() == 4);
    auto so3 = levi_enumerate(single(FactorType::so_odd(1)));
    types.clear();
    for (auto& l : so3) types.insert(l.type());
    CHECK(types == std::set<GroupType>{GroupType({FactorType::so_odd(1)}), GroupType({FactorType::gl(1)})});
    CHECK(levi_enumerate(single(FactorType::gl(4))).size() == 5);
    CHECK(levi_enumerate(single(FactorType::so_even(2, FormClass::split))).size() == 3);
    CHECK(levi_enumerate(single(FactorType::so_even(2, FormClass::unram_nonsplit))).size() == 2);
    CHECK(levi_enumerate(single(FactorType::u(3))).size() == 2);
    for (auto t : {FactorType::sp(3), FactorType::u(4, 2), FactorType::gl(3, 2), FactorType::so_even(3, FormClass::split)}) {
        auto g = single(t);
        auto ls = levis_containing(g, g);
        REQUIRE(ls.size() == 1);
        CHECK(ls[0] == g);
    }
}

TEST_CASE("levis containing the minimal Levi are the root flats") {
    struct Case {
        FactorType t;
        bool short_roots;
        bool type_a;
    };
    std::vector<Case> cases;
    for (int a = 1; a <= 4; ++a) {
        cases.push_back({FactorType::sp(a), true, false});
        cases.push_back({FactorType::so_odd(a), true, false});
        cases.push_back({FactorType::gl(a), false, true});
        cases.push_back({FactorType::gl(a, 2), false, true});
    }
    for (int b = 2; b <= 4; ++b) {
        cases.push_back({FactorType::so_even(b, FormClass::split), false, false});
        cases.push_back({FactorType::so_even(b, FormClass::unram_nonsplit), true, false});
    }
    for (int k = 1; k <= 6; ++k) cases.push_back({FactorType::u(k), true, false});
    for (auto& c : cases) {
        auto g = single(c.t);
        auto r = minimal_levi(g);
        auto bv = block_vectors(r);
        CAPTURE(c.t.str());
        CHECK(levi_a_spaces(g, r) == flats(g.ambient(), bv, c.short_roots, c.type_a));
    }
}

TEST_CASE("levis containing an intermediate Levi") {
    // Sp(6) over GL(1) x GL(2): 2 blocks, type C2 flats
    EmbeddedGroup g = single(FactorType::sp(3));
    EmbeddedGroup r(3, {{FactorType::gl(1), {0}, {}}, {FactorType::gl(2), {1, 2}, {}}});
    CHECK(levis_containing(g, r).size() == flats(3, block_vectors(r), true, false).size());
    CHECK(levi_a_spaces(g, r) == flats(3, block_vectors(r), true, false));
    // blocks straddling two factors are rejected
    EmbeddedGroup g2 = standard_embedding(GroupType({FactorType::sp(1), FactorType::sp(1)}));
    EmbeddedGroup bad(2, {{FactorType::gl(2), {0, 1}, {}}});
    CHECK_THROWS_AS(levis_containing(g2, bad), EmbeddingInvalid);
}

TEST_CASE("center invariants across the catalog") {
    std::vector<FactorType> ts;
    for (int k = 1; k <= 3; ++k) {
        ts.push_back(FactorType::gl(k));
        ts.push_back(FactorType::u(k));
        ts.push_back(FactorType::sp(k));
        ts.push_back(FactorType::so_odd(k));
        ts.push_back(FactorType::so_even(k, FormClass::split));
        ts.push_back(FactorType::so_even(k, FormClass::unram_nonsplit));
    }
    ts.push_back(FactorType::gl(1, 2));
    ts.push_back(FactorType::u(2, 2));
    int pairs = 0;
    for (auto& t : ts) {
        auto g = single(t);
        CAPTURE(t.str());
        auto gb = bar(g);
        CHECK(dual_center(g).contains(dual_center(gb)));
        CHECK(dual_center0(gb) == dual_center0(g));
        CHECK(gb.type().a_dimension() == g.type().a_dimension());
        for (auto& s : levi_enumerate(g)) {
            DiagSubgroup zg = dual_center(g), zs = dual_center(s), zs0 = dual_center0(s);
            CHECK(arthur_product_check(zg, zs, zs0));
            CHECK(elts(zs, 4) == oracle::product_set(elts(zg, 4), elts(zs0, 4), 4));
            CHECK(a_space(s).dim() == s.type().a_dimension());
            ++pairs;
        }
    }
    CHECK(pairs > 40);
}
