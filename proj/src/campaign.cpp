#include "wfl/campaign.hpp"

#include <atomic>
#include <numeric>
#include <set>
#include <thread>

namespace wfl {

namespace {

using Orbit = std::vector<RootOfUnity>;

std::vector<RootOfUnity> allowed_roots(const std::vector<long long>& orders, long long q) {
    std::vector<RootOfUnity> out;
    for (long long N : orders) {
        if (std::gcd(N, q) != 1) continue;
        for (long long j = 0; j < N; ++j)
            if (std::gcd(j, N) == 1) out.push_back(RootOfUnity(Rational(j, N)));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// All multisets of items (by index, non-decreasing) whose weights add up to `total`.
void weighted_multisets(const std::vector<int>& weight, int total, std::size_t from, std::vector<int>& cur,
                        std::vector<std::vector<int>>& out) {
    if (total == 0) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = from; i < weight.size(); ++i) {
        if (weight[i] > total) continue;
        cur.push_back(static_cast<int>(i));
        weighted_multisets(weight, total - weight[i], i, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<DescentScenario> descent_corpus(const CorpusSpec& spec) {
    std::vector<DescentScenario> out;
    for (long long q : spec.qs) {
        auto roots = allowed_roots(spec.orders, q);
        // Frobenius orbits for the blocks, and symplectic units (pairs of classes) for eps', eps''
        std::set<Orbit> orbit_set;
        for (const auto& x : roots) orbit_set.insert(frobenius_orbit(x, q));
        std::vector<Orbit> orbits(orbit_set.begin(), orbit_set.end());
        std::vector<Multiset<RootOfUnity>> units;
        std::set<Multiset<RootOfUnity>> seen;
        for (const auto& o : orbits) {
            Multiset<RootOfUnity> u = o;
            if (o.size() == 1 && (o[0].is_one() || o[0].is_minus_one())) {
                u.push_back(o[0]);
            } else {
                Orbit inv = frobenius_orbit(o[0].inverse(), q);
                if (inv != o) u.insert(u.end(), inv.begin(), inv.end());
            }
            u = sorted(u);
            if (seen.insert(u).second) units.push_back(u);
        }
        std::vector<int> orbit_w, unit_w;
        for (const auto& o : orbits) orbit_w.push_back(static_cast<int>(o.size()));
        for (const auto& u : units) unit_w.push_back(static_cast<int>(u.size()) / 2);

        auto block_sets = [&](int k) {
            std::vector<std::vector<int>> idx;
            std::vector<int> cur;
            weighted_multisets(orbit_w, k, 0, cur, idx);
            std::vector<Multiset<RootOfUnity>> res;
            for (auto& choice : idx) {
                Multiset<RootOfUnity> m;
                for (int i : choice) m.insert(m.end(), orbits[i].begin(), orbits[i].end());
                res.push_back(sorted(m));
            }
            return res;
        };
        auto ortho_sets = [&](int k) {
            std::vector<std::vector<int>> idx;
            std::vector<int> cur;
            weighted_multisets(unit_w, k, 0, cur, idx);
            std::vector<Multiset<RootOfUnity>> res;
            for (auto& choice : idx) {
                Multiset<RootOfUnity> m{RootOfUnity::one()};
                for (int i : choice) m.insert(m.end(), units[i].begin(), units[i].end());
                res.push_back(sorted(m));
            }
            return res;
        };

        for (int n = spec.min_n; n <= spec.max_n; ++n) {
            for (const auto& levi : levi_data(n)) {
                // blocks: per block an index into block_sets(size); equal sizes non-decreasing
                std::vector<std::vector<Multiset<RootOfUnity>>> options;
                for (int k : levi.sizes) options.push_back(block_sets(k));
                std::vector<std::vector<Multiset<RootOfUnity>>> gl_choices;
                std::vector<std::size_t> pick(levi.sizes.size(), 0);
                std::function<void(std::size_t)> rec = [&](std::size_t i) {
                    if (i == levi.sizes.size()) {
                        std::vector<Multiset<RootOfUnity>> c;
                        for (std::size_t j = 0; j < i; ++j) c.push_back(options[j][pick[j]]);
                        gl_choices.push_back(c);
                        return;
                    }
                    std::size_t start = (i > 0 && levi.sizes[i] == levi.sizes[i - 1]) ? pick[i - 1] : 0;
                    for (std::size_t p = start; p < options[i].size(); ++p) {
                        pick[i] = p;
                        rec(i + 1);
                    }
                };
                rec(0);
                for (const auto& s0 : elliptic_data_meta(levi.m)) {
                    auto primes = ortho_sets(s0.m_prime), dblprimes = ortho_sets(s0.m_dblprime);
                    for (const auto& gl : gl_choices)
                        for (const auto& ep : primes)
                            for (const auto& edp : dblprimes) {
                                bool pm = std::any_of(ep.begin(), ep.end(), [](const RootOfUnity& x) { return x.is_minus_one(); });
                                bool dm = std::any_of(edp.begin(), edp.end(), [](const RootOfUnity& x) { return x.is_minus_one(); });
                                for (FormClass fp : {FormClass::split, FormClass::unram_nonsplit}) {
                                    if (!pm && fp != FormClass::split) continue;
                                    for (FormClass fd : {FormClass::split, FormClass::unram_nonsplit}) {
                                        if (!dm && fd != FormClass::split) continue;
                                        DescentScenario sc{levi, s0, q, gl, ep, edp, {fp, fd}};
                                        if (validate_scenario(sc).ok()) out.push_back(sc);
                                    }
                                }
                            }
                }
            }
        }
    }
    return out;
}

std::vector<ScenarioResult> run_descent_campaign(const std::vector<DescentScenario>& corpus, int jobs, const DescentHooks& hooks) {
    std::vector<ScenarioResult> res(corpus.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < corpus.size(); i = next++) {
            res[i].index = i;
            try {
                res[i].report = verify_descent(corpus[i], hooks);
            } catch (const DomainError& e) {
                res[i].error = e.what();
            }
        }
    };
    jobs = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return res;
}

}  // namespace wfl
