#include "wfl/suites.hpp"

#include "wfl/scenario_io.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <random>

namespace wfl {

namespace {

constexpr std::size_t kMaxFailuresPerCheck = 5;

class Timer {
public:
    Timer() : t0_(std::chrono::steady_clock::now()) {}
    double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

private:
    std::chrono::steady_clock::time_point t0_;
};

}  // namespace

std::size_t SuiteResult::total() const {
    std::size_t s = 0;
    for (auto& t : tallies) s += t.passed + t.failed;
    return s;
}

std::size_t SuiteResult::failed() const {
    std::size_t s = 0;
    for (auto& t : tallies) s += t.failed;
    return s;
}

void SuiteResult::record(const std::string& check, bool ok, const std::string& subject, const std::string& witness) {
    auto it = std::find_if(tallies.begin(), tallies.end(), [&](const CheckTally& t) { return t.check == check; });
    if (it == tallies.end()) {
        tallies.push_back({check, 0, 0});
        it = tallies.end() - 1;
    }
    if (ok) {
        ++it->passed;
        return;
    }
    if (it->failed++ < kMaxFailuresPerCheck) failures.push_back({check, subject, witness});
}

std::string scenario_digest(const DescentScenario& sc) {
    // FNV-1a over the canonical JSON text
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : scenario_to_json(sc)) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

SuiteResult suite_counts(int max_m, int max_n) {
    Timer tm;
    SuiteResult r;
    r.name = "counts";
    for (int m = 0; m <= max_m; ++m) {
        auto n = elliptic_data_meta(m).size();
        r.record("elliptic-data", static_cast<int>(n) == m + 1, "m=" + std::to_string(m), std::to_string(n));
    }
    for (int n = 0; n <= max_n; ++n)
        for (const auto& d : levi_data(n))
            for (const auto& s0 : elliptic_data_meta(d.m)) {
                auto k = e_set(d, s0).size();
                r.record("e-set", k == (std::size_t{1} << d.sizes.size()), d.str(), std::to_string(k));
            }
    r.seconds = tm.seconds();
    return r;
}

SuiteResult suite_nonstandard(int max_n) {
    Timer tm;
    SuiteResult r;
    r.name = "nonstandard";
    for (int n = 1; n <= max_n; ++n) {
        NonStdTriple t = build_triple(n);
        Rational idx = lattice_index(IntLattice(n, t.coroots2), IntLattice(n, t.coroots1));
        r.record("coroot-index", idx == Rational(1, 2), "n=" + std::to_string(n), to_string(idx));
        for (const auto& d : levi_data(n)) {
            Rational c = c_nonstandard_raw(t, d);
            Rational want = d.m == 0 ? Rational(1, 2) : Rational(1);
            r.record("coefficient", c == want, d.str(), to_string(c) + " expected " + to_string(want));
        }
    }
    r.seconds = tm.seconds();
    return r;
}

SuiteResult suite_torsion(std::uint64_t seed, int per_shape, int max_blocks, int max_m) {
    Timer tm;
    SuiteResult r;
    r.name = "torsion";
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> height(1, 7), coin(0, 1), bsize(1, 3);
    auto rnd = [&] {
        Rational x(height(rng), height(rng));
        return coin(rng) ? -x : x;
    };
    for (int k = 0; k <= max_blocks; ++k)
        for (int m = 0; m <= max_m; ++m)
            for (int trial = 0; trial < per_shape; ++trial) {
                int mp = std::uniform_int_distribution<int>(0, m)(rng);
                EndoClass c;
                SElement s{{mp, m - mp}, {}};
                for (int i = 0; i < k; ++i) {
                    Multiset<Rational> b;
                    for (int j = bsize(rng); j > 0; --j) b.push_back(rnd());
                    c.blocks.push_back(b);
                    s.signs.push_back(coin(rng) ? 1 : -1);
                }
                for (auto [side, rank] : {std::pair{&c.prime, mp}, std::pair{&c.dblprime, m - mp}}) {
                    side->push_back(1);
                    for (int j = 0; j < rank; ++j) {
                        Rational x = rnd();
                        side->push_back(x);
                        side->push_back(1 / x);
                    }
                }
                bool ok = false;
                std::string w;
                try {
                    ok = correspond_mu1_check(c, s);
                    if (!ok) w = multiset_str(mu1_via_gs(c, s)) + " vs " + multiset_str(mu_via_levi(c, s));
                } catch (const DomainError& e) {
                    w = e.what();
                }
                r.record("mu1", ok, "|I|=" + std::to_string(k) + " m=" + std::to_string(m) + " trial " + std::to_string(trial), w);
            }
    r.seconds = tm.seconds();
    return r;
}

std::vector<GroupType> catalog_groups(int max_rank) {
    std::vector<FactorType> singles;
    for (int w = 1; w <= max_rank; ++w) {
        singles.push_back(FactorType::sp(w));
        singles.push_back(FactorType::so_odd(w));
        for (FormClass f : {FormClass::split, FormClass::unram_nonsplit, FormClass::ramified})
            if (!(w == 1 && f == FormClass::split)) singles.push_back(FactorType::so_even(w, f));
        for (int d = 1; d <= w; ++d)
            if (w % d == 0) {
                singles.push_back(FactorType::gl(w / d, d));
                singles.push_back(FactorType::u(w / d, d));
            }
    }
    std::vector<GroupType> out;
    for (std::size_t i = 0; i < singles.size(); ++i) {
        out.push_back(GroupType({singles[i]}));
        for (std::size_t j = i; j < singles.size(); ++j)
            if (singles[i].width() + singles[j].width() <= max_rank) out.push_back(GroupType({singles[i], singles[j]}));
    }
    return out;
}

SuiteResult suite_product(int max_rank) {
    Timer tm;
    SuiteResult r;
    r.name = "product";
    for (const auto& g : catalog_groups(max_rank)) {
        EmbeddedGroup eg = standard_embedding(g);
        DiagSubgroup zg = dual_center(eg);
        for (const auto& s : levi_enumerate(eg)) {
            bool ok = false;
            try {
                ok = arthur_product_check(zg, dual_center(s), dual_center0(s));
            } catch (const DomainError&) {
                ok = false;
            }
            r.record("product-law", ok, g.str() + " / " + s.str());
        }
    }
    r.seconds = tm.seconds();
    return r;
}

SuiteResult suite_descent(const CorpusSpec& spec, int jobs, const DescentHooks& hooks) {
    Timer tm;
    SuiteResult r;
    r.name = "descent";
    auto corpus = descent_corpus(spec);
    auto res = run_descent_campaign(corpus, jobs, hooks);
    std::size_t nat = 0, est = 0, inst = 0;
    for (const auto& x : res) {
        const auto& sc = corpus[x.index];
        if (!x.error.empty()) {
            r.record("evaluation", false, scenario_digest(sc), scenario_str(sc) + ": " + x.error);
            continue;
        }
        r.record("evaluation", true);
        for (const auto& c : x.report.checks) r.record(c.id, c.ok, scenario_digest(sc), scenario_str(sc) + " | " + c.witness);
        nat += x.report.e_natural;
        est += x.report.e_st;
        inst += x.report.e_inst;
    }
    r.note = std::to_string(corpus.size()) + " scenarios, |E-natural| " + std::to_string(nat) + ", |E-st| " + std::to_string(est) +
             ", |E-inst| " + std::to_string(inst);
    r.seconds = tm.seconds();
    return r;
}

}  // namespace wfl
