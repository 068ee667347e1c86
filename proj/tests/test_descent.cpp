#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "wfl/campaign.hpp"
#include "wfl/scenario_io.hpp"

#include <random>

using namespace wfl;

namespace {

Multiset<RootOfUnity> R(std::initializer_list<const char*> l) {
    Multiset<RootOfUnity> m;
    for (auto s : l) m.push_back(RootOfUnity::parse(s));
    return m;
}

DescentScenario scen(LeviDatum levi, EllipticDatumMeta s0, long long q, std::vector<Multiset<RootOfUnity>> gl,
                     Multiset<RootOfUnity> ep, Multiset<RootOfUnity> edp, FormTags f = {}) {
    return {levi, s0, q, gl, ep, edp, f};
}

bool has_check(const DescentReport& r, const std::string& id, bool ok) {
    for (auto& c : r.checks)
        if (c.id == id) return c.ok == ok;
    return false;
}

}  // namespace

TEST_CASE("scenario validation") {
    auto minimal = scen({{}, 1}, {1, 0}, 3, {}, R({"0", "0", "0"}), R({"0"}));
    CHECK(validate_scenario(minimal).ok());
    CHECK(validate_scenario(minimal).hyp_b);
    // {zeta_5} is not stable under x -> x^3
    auto unstable = scen({{1}, 0}, {0, 0}, 3, {R({"1/5"})}, R({"0"}), R({"0"}));
    CHECK_FALSE(validate_scenario(unstable).ok());
    auto stable = scen({{4}, 0}, {0, 0}, 3, {R({"1/5", "2/5", "3/5", "4/5"})}, R({"0"}), R({"0"}));
    CHECK(validate_scenario(stable).ok());
    auto no_one = scen({{}, 1}, {1, 0}, 3, {}, R({"1/2", "1/2", "1/2"}), R({"0"}));
    CHECK_FALSE(validate_scenario(no_one).ok());
    auto bad_q = scen({{1}, 0}, {0, 0}, 5, {R({"1/5"})}, R({"0"}), R({"0"}));
    CHECK_FALSE(validate_scenario(bad_q).ok());
    auto ram = scen({{}, 1}, {0, 1}, 3, {}, R({"0"}), R({"0", "1/2", "1/2"}), {FormClass::split, FormClass::ramified});
    CHECK(validate_scenario(ram).ok());
    CHECK_FALSE(validate_scenario(ram).hyp_b);
    CHECK_THROWS_AS(descend(ram), ScenarioInvalid);
    CHECK_THROWS_AS(descend(no_one), ScenarioInvalid);
}

TEST_CASE("eta from eps") {
    auto e1 = eta_from_epsilon(scen({{}, 1}, {1, 0}, 7, {}, R({"1/3", "0", "2/3"}), R({"0"})));
    CHECK(e1.sp == R({"1/3", "2/3"}));
    CHECK(eta_from_epsilon(scen({{}, 0}, {0, 0}, 7, {}, R({"0"}), R({"0"}))).sp.empty());
    CHECK(eta_from_epsilon(scen({{}, 1}, {0, 1}, 7, {}, R({"0"}), R({"1/2", "0", "1/2"}))).sp == R({"0", "0"}));
}

TEST_CASE("centralizer types") {
    CHECK(frobenius_orbit(RootOfUnity::parse("1/5"), 3).size() == 4);
    CHECK(frobenius_orbit(RootOfUnity::parse("1/8"), 7) == R({"1/8", "7/8"}));
    CHECK(centralizer_type(R({"1/4", "3/4"}), 3, CentralizerKind::symplectic) == GroupType({FactorType::u(1, 1)}));
    CHECK(centralizer_type(R({"0", "0"}), 3, CentralizerKind::symplectic) == GroupType({FactorType::sp(1)}));
    CHECK(centralizer_type(R({"1/5", "4/5"}), 11, CentralizerKind::symplectic) == GroupType({FactorType::gl(1, 1)}));
    CHECK(centralizer_type(R({"1/5", "2/5", "3/5", "4/5"}), 3, CentralizerKind::symplectic) == GroupType({FactorType::u(1, 2)}));
    CHECK(centralizer_type(R({"1/8", "3/8", "5/8", "7/8"}), 3, CentralizerKind::symplectic) == GroupType({FactorType::gl(1, 2)}));
    CHECK(centralizer_type(R({"0", "1/2", "1/2"}), 3, CentralizerKind::odd_orthogonal, FormClass::unram_nonsplit) ==
          GroupType({FactorType::so_even(1, FormClass::unram_nonsplit)}));
    CHECK(centralizer_type(R({"0", "0", "0", "1/4", "3/4"}), 3, CentralizerKind::odd_orthogonal) ==
          GroupType({FactorType::so_odd(1), FactorType::u(1, 1)}));
    CHECK(centralizer_type(R({"0", "1/2", "1/4", "3/4"}), 3, CentralizerKind::gl) ==
          GroupType({FactorType::gl(1), FactorType::gl(1), FactorType::gl(1, 2)}));
    CHECK_THROWS_AS(centralizer_type(R({"1/4", "1/4"}), 3, CentralizerKind::symplectic), InvariantViolation);
    // orbit arithmetic oracle: the type widths add up and U/GL degrees follow the orbit sizes
    for (long long q : {3, 5, 7})
        for (const char* x : {"1/4", "1/5", "1/8", "3/8", "1/3"}) {
            RootOfUnity z = RootOfUnity::parse(x);
            if (std::gcd(z.order(), q) != 1) continue;
            auto o = frobenius_orbit(z, q), oi = frobenius_orbit(z.inverse(), q);
            Multiset<RootOfUnity> m = o;
            if (o != oi) m.insert(m.end(), oi.begin(), oi.end());
            GroupType g = centralizer_type(m, q, CentralizerKind::symplectic);
            REQUIRE(g.factors().size() == 1);
            CHECK(g.width() == static_cast<int>(m.size()) / 2);
            CHECK(g.factors()[0].kind == (o == oi ? Kind::U : Kind::GL));
        }
}

TEST_CASE("R and s0-bar") {
    // no split blocks, no hyperbolic plane: R = M_eta
    auto a = descend(scen({{1}, 1}, {1, 0}, 3, {R({"0"})}, R({"0", "1/4", "3/4"}), R({"0"})));
    CHECK(a.R == a.M_eta);
    CHECK(a.absorbed.empty());
    // V''_- hyperbolic of dimension 2: R gains a GL(1)
    auto b = descend(scen({{}, 1}, {0, 1}, 3, {}, R({"0"}), R({"0", "1/2", "1/2"})));
    CHECK(b.M_eta.type() == GroupType({FactorType::sp(1)}));
    CHECK(b.R.type() == GroupType({FactorType::gl(1)}));
    REQUIRE(b.absorbed.size() == 1);
    auto b2 = descend(scen({{}, 1}, {0, 1}, 3, {}, R({"0"}), R({"0", "1/2", "1/2"}), {FormClass::split, FormClass::unram_nonsplit}));
    CHECK(b2.R == b2.M_eta);
    // GL-type class inside the orthogonal part: absorbed with degree |O|
    auto c = descend(scen({{}, 2}, {2, 0}, 5, {}, R({"0", "1/8", "3/8", "5/8", "7/8"}), R({"0"})));
    CHECK(c.R.type() == GroupType({FactorType::gl(1, 2)}));
    REQUIRE(c.absorbed.size() == 1);
    CHECK(c.absorbed[0].size() == 2);
    // s0-bar
    auto d = descend(scen({{2, 1}, 0}, {0, 0}, 3, {R({"0", "0"}), R({"1/2"})}, R({"0"}), R({"0"})));
    CHECK(d.sbar0.s == std::vector<int>{1, 1, -1});
    auto e = descend(scen({{}, 2}, {1, 1}, 3, {}, R({"0", "1/2", "1/2"}), R({"0", "0", "0"})));
    CHECK(e.sbar0.s == std::vector<int>{-1, 1});
}

TEST_CASE("tau and compatibility rows") {
    auto o = descend(scen({{2}, 0}, {0, 0}, 3, {R({"0", "1/2"})}, R({"0"}), R({"0"})));
    CHECK(tau(o, {1}) == std::vector<int>{1, 1});
    CHECK(tau(o, {-1}) == std::vector<int>{-1, -1});
    CHECK(sbar_of_t(o, {1}).s == o.sbar0.s);
    // I'' rows: J^+ gives -1, J^- gives +1
    auto p = descend(scen({{1, 1}, 0}, {0, 0}, 3, {R({"0"}), R({"1/2"})}, R({"0"}), R({"0"})));
    CHECK(sbar_of_t(p, {-1, -1}).s == std::vector<int>{-1, 1});
    CHECK(stable_descent(p, {-1, -1}).sbar == std::vector<int>{-1, 1});
    for (auto t : {std::vector<int>{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}) {
        CHECK(compatibility_check(p, t));
        CHECK(pushforward_check(p, t));
    }
    auto bad = descend(scen({{1, 1}, 0}, {0, 0}, 3, {R({"0"}), R({"1/2"})}, R({"0"}), R({"0"})), {true});
    CHECK_FALSE(compatibility_check(bad, {1, 1}));
}

TEST_CASE("pushforward and section") {
    auto o = descend(scen({{1}, 2}, {1, 1}, 7, {R({"1/3"})}, R({"0", "1/4", "3/4"}), R({"0", "1/2", "1/2"}),
                          {FormClass::split, FormClass::unram_nonsplit}));
    auto [ls, le] = pushforward_levi(o, {1}, o.R);
    CHECK(ls == o.Mexc_bar);
    CHECK(le == o.Mexc);
    CHECK(section_levi(o, le) == o.R);
    for (auto t : {std::vector<int>{1}, {-1}}) CHECK(pushforward_check(o, t));
    for (auto& e : enumerate_E_natural(o)) {
        CHECK(section_levi(o, e.L_eps) == e.L);
        CHECK(a_space(e.L) == a_space(e.L_eps));
    }
}

TEST_CASE("M = G collapses the coefficients") {
    auto o = descend(scen({{}, 1}, {1, 0}, 3, {}, R({"0", "0", "0"}), R({"0"})));
    CHECK(o.G_eta == o.R);
    auto nat = enumerate_E_natural(o);
    REQUIRE(nat.size() == 1);
    CHECK(nat[0].t.empty());
    CHECK(nat[0].L == o.G_eta);
    CHECK(nat[0].c_inst == 1);
    CHECK(nat[0].c_st == 1);
    CHECK(nat[0].d_inst.value == 1);
    // M = G in general: t is empty on every entry
    auto m2 = descend(scen({{}, 2}, {1, 1}, 5, {}, R({"0", "1/4", "3/4"}), R({"0", "1/3", "2/3"})));
    for (auto& e : enumerate_E_natural(m2)) CHECK(e.t.empty());
}

TEST_CASE("fault hook is caught") {
    auto sc = scen({{1}, 1}, {1, 0}, 7, {R({"0"})}, R({"0", "0", "0"}), R({"0"}));
    CHECK(verify_descent(sc).ok());
    auto rep = verify_descent(sc, {true});
    CHECK_FALSE(rep.ok());
    CHECK(has_check(rep, "sbar-compat", false));
}

TEST_CASE("corpus up to rank 3") {
    CorpusSpec spec;
    spec.max_n = 3;
    auto corpus = descent_corpus(spec);
    CHECK(corpus.size() > 1000);
    auto res = run_descent_campaign(corpus, 2);
    std::size_t halves = 0, nat = 0;
    for (auto& r : res) {
        INFO(scenario_str(corpus[r.index]));
        CHECK(r.error.empty());
        for (auto& c : r.report.checks) {
            INFO(c.id << ": " << c.witness);
            CHECK(c.ok);
        }
        CHECK(r.report.e_natural == r.report.e_st);
        nat += r.report.e_natural;
    }
    // spot-check coefficient shapes on a slice of the corpus
    for (std::size_t i = 0; i < corpus.size(); i += 7)
        for (auto& e : enumerate_E_natural(descend(corpus[i]))) {
            Rational q = e.c_inst / e.c_st;
            BigInt num = boost::multiprecision::numerator(q);
            CHECK(boost::multiprecision::denominator(q) == 1);
            CHECK((num & (num - 1)) == 0);
            halves += e.c_nonstandard != 1;
        }
    CHECK(nat > 0);
    CHECK(halves > 0);
}

TEST_CASE("A cap Ba = (A cap B) a") {
    std::mt19937_64 rng(7);
    int tried = 0;
    while (tried < 200) {
        int n = 1 + static_cast<int>(rng() % 3);
        long long e = 2 + static_cast<long long>(rng() % 3);
        DiagSubgroup A(IntLattice(n, oracle::random_finite_chars(rng, n, e, 1)));
        DiagSubgroup B(IntLattice(n, oracle::random_finite_chars(rng, n, e, 1)));
        DiagSubgroup a(IntLattice(n, oracle::random_finite_chars(rng, n, e, 2)));
        a = diag_intersect(a, A);
        ++tried;
        DiagSubgroup lhs = diag_intersect(A, diag_product(B, a));
        DiagSubgroup rhs = diag_product(diag_intersect(A, B), a);
        CHECK(lhs == rhs);
        long long E = 12;
        auto el = [&](const DiagSubgroup& d) { return oracle::elements(n, E, d.vanishing_chars().basis()); };
        CHECK(el(lhs) == oracle::intersect_set(el(A), oracle::product_set(el(B), el(a), E)));
    }
}

TEST_CASE("scenario files") {
    auto sc = scen({{2, 1}, 1}, {1, 0}, 7, {R({"1/4", "3/4"}), R({"0"})}, R({"0", "1/3", "2/3"}), R({"0"}),
                   {FormClass::split, FormClass::split});
    std::string text = scenario_to_json(sc);
    auto back = scenario_from_json(text);
    CHECK(scenario_to_json(back) == text);
    CHECK(back.eps_gl[0] == sc.eps_gl[0]);
    CHECK(text.find("\"3/4\"") != std::string::npos);
    CHECK(text.find("\"0/1\"") != std::string::npos);
    CHECK_THROWS_AS(scenario_from_json("{"), ScenarioFormatError);
    CHECK_THROWS_AS(scenario_from_json(R"({"levi": {"sizes": [], "m": 0}})"), ScenarioFormatError);
}
