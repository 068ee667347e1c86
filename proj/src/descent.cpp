#include "wfl/descent.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace wfl {

ScenarioInvalid::ScenarioInvalid(std::vector<std::string> v)
    : DomainError("invalid scenario: " + (v.empty() ? std::string("?") : v.front())), violations(std::move(v)) {}

std::string root_str(const RootOfUnity& x) {
    const Rational& e = x.exponent();
    return boost::multiprecision::numerator(e).str() + "/" + boost::multiprecision::denominator(e).str();
}

std::string scenario_str(const DescentScenario& sc) {
    std::ostringstream os;
    os << "levi=" << sc.levi.str() << " s0=(" << sc.s0.m_prime << "," << sc.s0.m_dblprime << ") q=" << sc.q << " eps_gl=[";
    for (std::size_t i = 0; i < sc.eps_gl.size(); ++i) {
        if (i) os << ",";
        os << "{";
        for (std::size_t j = 0; j < sc.eps_gl[i].size(); ++j) os << (j ? "," : "") << root_str(sc.eps_gl[i][j]);
        os << "}";
    }
    os << "] eps'={";
    for (std::size_t j = 0; j < sc.eps_prime.size(); ++j) os << (j ? "," : "") << root_str(sc.eps_prime[j]);
    os << "} eps''={";
    for (std::size_t j = 0; j < sc.eps_dblprime.size(); ++j) os << (j ? "," : "") << root_str(sc.eps_dblprime[j]);
    os << "} forms=" << to_string(sc.forms.prime_minus) << "," << to_string(sc.forms.dblprime_minus);
    return os.str();
}

std::vector<RootOfUnity> frobenius_orbit(const RootOfUnity& x, long long q) {
    std::vector<RootOfUnity> orbit{x};
    for (RootOfUnity y = x.frobenius(q); y != x; y = y.frobenius(q)) {
        orbit.push_back(y);
        if (orbit.size() > 10000) throw InvariantViolation("Frobenius orbit does not close; q shares a factor with the order");
    }
    std::sort(orbit.begin(), orbit.end());
    return orbit;
}

namespace {

// Class of x under Frobenius and inversion.  The canonical orbit is the one
// holding the smallest exponent.
struct EigenClass {
    std::vector<RootOfUnity> canonical;
    bool self_inverse = false;
    int orientation = 1;  // +1 when x lies in the canonical orbit

    bool is_plus() const { return canonical.size() == 1 && canonical[0].is_one(); }
    bool is_minus() const { return canonical.size() == 1 && canonical[0].is_minus_one(); }
};

EigenClass eigen_class(const RootOfUnity& x, long long q) {
    auto o = frobenius_orbit(x, q), oi = frobenius_orbit(x.inverse(), q);
    EigenClass c;
    c.self_inverse = o == oi;
    if (c.self_inverse || o.front() < oi.front()) {
        c.canonical = o;
    } else {
        c.canonical = oi;
        c.orientation = -1;
    }
    return c;
}

bool frobenius_stable(const Multiset<RootOfUnity>& m, long long q) {
    Multiset<RootOfUnity> img;
    for (const auto& x : m) img.push_back(x.frobenius(q));
    return sorted(img) == sorted(m);
}

// Splits an inversion-closed multiset into coordinates: one entry per pair
// {x, 1/x}, oriented towards the canonical orbit of its class.
std::vector<RootOfUnity> pair_up(const Multiset<RootOfUnity>& m, long long q) {
    if (!inversion_closed(m)) throw InvariantViolation("multiset " + multiset_str(m) + " is not closed under inversion");
    std::map<RootOfUnity, int> count;
    for (const auto& x : m) ++count[x];
    std::vector<RootOfUnity> out;
    for (auto& [x, c] : count) {
        if (x.is_one() || x.is_minus_one()) {
            if (c % 2) throw InvariantViolation("odd multiplicity of " + root_str(x) + " in " + multiset_str(m));
            for (int j = 0; j < c / 2; ++j) out.push_back(x);
            continue;
        }
        if (x.inverse() < x) continue;
        RootOfUnity rep = x;
        EigenClass cl = eigen_class(x, q);
        if (!cl.self_inverse && cl.orientation < 0) rep = x.inverse();
        for (int j = 0; j < c; ++j) out.push_back(rep);
    }
    std::sort(out.begin(), out.end());
    return out;
}

enum class Role { plus, minus, other };

struct BuiltFactor {
    EmbeddedFactor f;
    Role role;
};

// Centralizer of the element acting by vals[j] on coords[j] (and by its
// inverse on the opposite coordinate).
std::vector<BuiltFactor> centralizer_factors(const std::vector<int>& coords, const std::vector<RootOfUnity>& vals,
                                             long long q, CentralizerKind kind, FormClass minus_form, bool torus_so2) {
    struct Group {
        EigenClass cls;
        std::vector<int> coords, signs;
        std::map<RootOfUnity, int> mult;  // eigenvalue multiplicities inside the class
    };
    std::map<std::vector<RootOfUnity>, Group> groups;
    for (std::size_t j = 0; j < coords.size(); ++j) {
        EigenClass cl = eigen_class(vals[j], q);
        std::vector<RootOfUnity> key = cl.canonical;
        if (kind == CentralizerKind::gl) key = frobenius_orbit(vals[j], q);
        Group& g = groups[key];
        g.cls = cl;
        g.coords.push_back(coords[j]);
        g.signs.push_back(cl.self_inverse ? 1 : cl.orientation);
        ++g.mult[vals[j]];
        if (kind != CentralizerKind::gl) ++g.mult[vals[j].inverse()];
    }
    std::vector<BuiltFactor> out;
    for (auto& [key, g] : groups) {
        const int count = static_cast<int>(g.coords.size());
        std::set<int> ms;
        for (auto& [x, c] : g.mult) ms.insert(c);
        std::size_t expected = kind == CentralizerKind::gl || g.cls.self_inverse ? key.size() : 2 * key.size();
        if (ms.size() != 1 || g.mult.size() != expected)
            throw InvariantViolation("eigenvalue multiplicities are not Frobenius stable");
        if (kind == CentralizerKind::gl) {
            int d = static_cast<int>(key.size());
            out.push_back({{FactorType::gl(count / d, d), g.coords, g.signs}, g.cls.is_plus() ? Role::plus : g.cls.is_minus() ? Role::minus : Role::other});
        } else if (g.cls.is_plus()) {
            FactorType t = kind == CentralizerKind::symplectic ? FactorType::sp(count) : FactorType::so_odd(count);
            out.push_back({{t, g.coords, {}}, Role::plus});
        } else if (g.cls.is_minus()) {
            FactorType t = kind == CentralizerKind::symplectic ? FactorType::sp(count) : FactorType::so_even(count, minus_form);
            if (torus_so2 && t.is_split_torus_so2()) t = FactorType::gl(1);
            out.push_back({{t, g.coords, {}}, Role::minus});
        } else if (g.cls.self_inverse) {
            int d = static_cast<int>(key.size()) / 2;
            out.push_back({{FactorType::u(count / d, d), g.coords, {}}, Role::other});
        } else {
            int d = static_cast<int>(key.size());
            out.push_back({{FactorType::gl(count / d, d), g.coords, g.signs}, Role::other});
        }
    }
    return out;
}

std::vector<EmbeddedFactor> strip(const std::vector<BuiltFactor>& b) {
    std::vector<EmbeddedFactor> out;
    for (const auto& x : b) out.push_back(x.f);
    return out;
}

std::vector<int> iota(int from, int to) {
    std::vector<int> v;
    for (int i = from; i < to; ++i) v.push_back(i);
    return v;
}

void append(std::vector<EmbeddedFactor>& to, const std::vector<EmbeddedFactor>& from) {
    to.insert(to.end(), from.begin(), from.end());
}

}  // namespace

ScenarioCheck validate_scenario(const DescentScenario& sc) {
    ScenarioCheck r;
    auto bad = [&](const std::string& s) { r.violations.push_back(s); };
    const auto& l = sc.levi;
    if (!std::is_sorted(l.sizes.rbegin(), l.sizes.rend()) || std::any_of(l.sizes.begin(), l.sizes.end(), [](int k) { return k < 1; }))
        bad("block sizes must be positive and non-increasing");
    if (l.m < 0 || sc.s0.m_prime < 0 || sc.s0.m_dblprime < 0) bad("negative rank");
    if (sc.s0.m() != l.m) bad("m' + m'' must equal m");
    if (sc.q < 2) bad("q must be at least 2");
    if (sc.eps_gl.size() != l.sizes.size()) bad("one eigenvalue multiset per block is required");
    auto orders_ok = [&](const Multiset<RootOfUnity>& m, const std::string& what) {
        for (const auto& x : m) {
            long long n = x.order(), a = n, b = sc.q;
            while (b) {
                a %= b;
                std::swap(a, b);
            }
            if (a != 1) {
                bad(what + ": order " + std::to_string(n) + " is not prime to q");
                return false;
            }
        }
        if (!frobenius_stable(m, sc.q)) {
            bad(what + ": " + multiset_str(m) + " is not Frobenius stable");
            return false;
        }
        return true;
    };
    for (std::size_t i = 0; i < sc.eps_gl.size() && i < l.sizes.size(); ++i) {
        if (static_cast<int>(sc.eps_gl[i].size()) != l.sizes[i])
            bad("block " + std::to_string(i) + " has " + std::to_string(sc.eps_gl[i].size()) + " eigenvalues");
        orders_ok(sc.eps_gl[i], "block " + std::to_string(i));
    }
    std::pair<const Multiset<RootOfUnity>*, int> sides[] = {{&sc.eps_prime, sc.s0.m_prime}, {&sc.eps_dblprime, sc.s0.m_dblprime}};
    const char* names[] = {"eps'", "eps''"};
    for (int k = 0; k < 2; ++k) {
        const auto& [m, rank] = sides[k];
        if (static_cast<int>(m->size()) != 2 * rank + 1) {
            bad(std::string(names[k]) + " must have " + std::to_string(2 * rank + 1) + " eigenvalues");
            continue;
        }
        try {
            check_odd_orthogonal(*m);
            auto minus = std::count_if(m->begin(), m->end(), [](const RootOfUnity& x) { return x.is_minus_one(); });
            if (minus % 2) bad(std::string(names[k]) + " has an odd number of eigenvalues -1");
        } catch (const InvariantViolation& e) {
            bad(std::string(names[k]) + ": " + e.what());
        }
        orders_ok(*m, names[k]);
    }
    // Dimension bookkeeping: dim W_+ + 1 = dim V'_+ + dim V''_-, and likewise for W_-.
    if (r.violations.empty()) {
        auto cnt = [](const Multiset<RootOfUnity>& m, bool one) {
            return static_cast<int>(std::count_if(m.begin(), m.end(), [&](const RootOfUnity& x) { return one ? x.is_one() : x.is_minus_one(); }));
        };
        Multiset<RootOfUnity> sp = correspond_mu(sc.eps_prime, sc.eps_dblprime);
        if (cnt(sp, true) + 1 != cnt(sc.eps_prime, true) + cnt(sc.eps_dblprime, false)) bad("dim W_+ does not match");
        if (cnt(sp, false) + 1 != cnt(sc.eps_prime, false) + cnt(sc.eps_dblprime, true)) bad("dim W_- does not match");
        auto has_minus = [&](const Multiset<RootOfUnity>& m) { return cnt(m, false) > 0; };
        // Every tag describes a quasi-split form, so (A) holds; (B) also asks
        // for unramified forms on the spaces that are present.
        r.hyp_a = true;
        r.hyp_b = !(has_minus(sc.eps_prime) && sc.forms.prime_minus == FormClass::ramified) &&
                  !(has_minus(sc.eps_dblprime) && sc.forms.dblprime_minus == FormClass::ramified);
    }
    return r;
}

EtaData eta_from_epsilon(const DescentScenario& sc) {
    auto chk = validate_scenario(sc);
    if (!chk.ok()) throw ScenarioInvalid(chk.violations);
    return {sc.eps_gl, correspond_mu(sc.eps_prime, sc.eps_dblprime)};
}

GroupType centralizer_type(const Multiset<RootOfUnity>& eigenvalues, long long q, CentralizerKind kind, FormClass minus_form) {
    std::vector<RootOfUnity> vals;
    if (kind == CentralizerKind::gl) {
        vals = sorted(eigenvalues);
    } else if (kind == CentralizerKind::symplectic) {
        check_symplectic(eigenvalues);
        vals = pair_up(eigenvalues, q);
    } else {
        check_odd_orthogonal(eigenvalues);
        vals = pair_up(drop_one_unit(eigenvalues), q);
    }
    int n = static_cast<int>(vals.size());
    return EmbeddedGroup(n, strip(centralizer_factors(iota(0, n), vals, q, kind, minus_form, false))).type();
}

namespace {

FormClass minus_tag(const DescentScenario& sc, int part) {
    const auto& m = part == 1 ? sc.eps_prime : sc.eps_dblprime;
    bool present = std::any_of(m.begin(), m.end(), [](const RootOfUnity& x) { return x.is_minus_one(); });
    if (!present) return FormClass::split;
    return part == 1 ? sc.forms.prime_minus : sc.forms.dblprime_minus;
}

}  // namespace

DescentOutcome descend(const DescentScenario& sc, const DescentHooks& hooks) {
    auto chk = validate_scenario(sc);
    if (!chk.ok()) throw ScenarioInvalid(chk.violations);
    if (!chk.hyp_b) throw ScenarioInvalid({"hypothesis (B) fails: ramified form class"});
    DescentOutcome o;
    o.scenario = sc;
    const int n = sc.n();
    const long long q = sc.q;

    // coordinates
    std::vector<std::pair<int, int>> ranges;
    for (std::size_t i = 0; i < sc.eps_gl.size(); ++i) {
        int start = static_cast<int>(o.coords.size());
        for (const auto& x : sorted(sc.eps_gl[i])) o.coords.push_back({static_cast<int>(i), 0, x});
        ranges.emplace_back(start, static_cast<int>(o.coords.size()));
    }
    std::vector<int> cp, cdp;
    for (const auto& x : pair_up(drop_one_unit(sc.eps_prime), q)) {
        cp.push_back(static_cast<int>(o.coords.size()));
        o.coords.push_back({-1, 1, x});
    }
    {
        // eta = -eps'' on this part; orient by the class of eta
        Multiset<RootOfUnity> neg;
        for (const auto& x : drop_one_unit(sc.eps_dblprime)) neg.push_back(x.negate());
        for (const auto& x : pair_up(neg, q)) {
            cdp.push_back(static_cast<int>(o.coords.size()));
            o.coords.push_back({-1, 2, x});
        }
    }
    if (static_cast<int>(o.coords.size()) != n) throw InvariantViolation("coordinate count mismatch");
    auto eta_of = [&](const std::vector<int>& cs) {
        std::vector<RootOfUnity> v;
        for (int c : cs) v.push_back(o.coords[c].eta);
        return v;
    };
    auto eps_of = [&](const std::vector<int>& cs) {
        std::vector<RootOfUnity> v;
        for (int c : cs) v.push_back(o.coords[c].part == 2 ? o.coords[c].eta.negate() : o.coords[c].eta);
        return v;
    };
    std::vector<int> sp_coords = cp;
    sp_coords.insert(sp_coords.end(), cdp.begin(), cdp.end());

    o.M = metaplectic_levi(sc.levi);

    // M_eta: blocks split by Frobenius orbit, Sp(2m) part by class.
    std::vector<EmbeddedFactor> blocks;
    for (auto [a, b] : ranges) append(blocks, strip(centralizer_factors(iota(a, b), eta_of(iota(a, b)), q, CentralizerKind::gl, FormClass::split, false)));
    std::vector<EmbeddedFactor> meta = blocks;
    append(meta, strip(centralizer_factors(sp_coords, eta_of(sp_coords), q, CentralizerKind::symplectic, FormClass::split, false)));
    o.M_eta = EmbeddedGroup(n, meta);

    // G_eta: every coordinate together.
    o.G_eta = EmbeddedGroup(n, strip(centralizer_factors(iota(0, n), eta_of(iota(0, n)), q, CentralizerKind::symplectic, FormClass::split, false)));

    // M^!_eps
    std::vector<EmbeddedFactor> mexc = blocks;
    append(mexc, strip(centralizer_factors(cp, eps_of(cp), q, CentralizerKind::odd_orthogonal, minus_tag(sc, 1), true)));
    append(mexc, strip(centralizer_factors(cdp, eps_of(cdp), q, CentralizerKind::odd_orthogonal, minus_tag(sc, 2), true)));
    o.Mexc = EmbeddedGroup(n, mexc);
    o.Mexc_bar = bar(o.Mexc);

    // R: refine the Sp(2m) part of M_eta.  GL factors of M^!_eps on that part
    // (split classes, SO(2) split) become GL blocks of R; the rest stays in
    // the unitary and symplectic cores.
    std::vector<EmbeddedFactor> r = blocks;
    std::map<std::vector<RootOfUnity>, std::vector<int>> cores;  // class -> coordinates kept in a core
    std::vector<RootOfUnity> core_key_vals;
    for (int part : {1, 2}) {
        const auto& cs = part == 1 ? cp : cdp;
        for (const auto& bf : centralizer_factors(cs, eps_of(cs), q, CentralizerKind::odd_orthogonal, minus_tag(sc, part), true)) {
            if (bf.f.type.kind == Kind::GL) {
                r.push_back(bf.f);
                o.absorbed.push_back(bf.f.coords);
                continue;
            }
            for (int c : bf.f.coords) cores[eigen_class(o.coords[c].eta, q).canonical].push_back(c);
        }
    }
    for (auto& [key, cs] : cores) append(r, strip(centralizer_factors(cs, eta_of(cs), q, CentralizerKind::symplectic, FormClass::split, false)));
    o.R = EmbeddedGroup(n, r);

    // s0-bar
    o.sbar0.s.assign(n, 1);
    o.sbar0.even_form.assign(n, FormClass::split);
    for (int c = 0; c < n; ++c) {
        const auto& d = o.coords[c];
        EigenClass cl = eigen_class(d.eta, q);
        if (d.part == 0) o.sbar0.s[c] = cl.is_minus() ? -1 : 1;
        else if (d.part == 1) o.sbar0.s[c] = cl.is_minus() ? -1 : 1;
        else o.sbar0.s[c] = cl.is_minus() ? 1 : -1;
        // the -1 part of Sp(W_+) carries the class of V''_-, that of Sp(W_-) the class of V'_-
        if (cl.is_plus()) o.sbar0.even_form[c] = minus_tag(sc, 2);
        if (cl.is_minus()) o.sbar0.even_form[c] = minus_tag(sc, 1);
    }
    if (hooks.corrupt_sbar0 && n > 0) o.sbar0.s[0] = -o.sbar0.s[0];
    return o;
}

std::vector<int> tau(const DescentOutcome& o, const std::vector<int>& t) {
    if (t.size() != o.scenario.levi.sizes.size()) throw DomainError("t needs one sign per block");
    std::vector<int> v(o.coords.size(), 1);
    for (std::size_t c = 0; c < o.coords.size(); ++c)
        if (o.coords[c].block >= 0) v[c] = t[o.coords[c].block];
    return v;
}

ArthurElement sbar_of_t(const DescentOutcome& o, const std::vector<int>& t) {
    ArthurElement s = o.sbar0;
    auto tv = tau(o, t);
    for (std::size_t c = 0; c < tv.size(); ++c) s.s[c] *= tv[c];
    return s;
}

StableDescent stable_descent(const DescentOutcome& o, const std::vector<int>& t) {
    const auto& sc = o.scenario;
    const int n = sc.n();
    StableDescent st;
    st.s = SElement{sc.s0, t};
    st.gs = g_of_s(sc.levi, st.s);
    // eps[s] = z[s] eps: the blocks of I'' and the eps'' part sit in the second factor
    std::vector<int> side[2];
    std::vector<RootOfUnity> vals[2];
    for (int c = 0; c < n; ++c) {
        const auto& d = o.coords[c];
        bool second = d.part == 2 || (d.part == 0 && t[d.block] < 0);
        side[second].push_back(c);
        vals[second].push_back(second ? d.eta.negate() : d.eta);
    }
    std::vector<EmbeddedFactor> fs;
    st.sbar.assign(n, 0);
    for (int k = 0; k < 2; ++k) {
        for (const auto& bf : centralizer_factors(side[k], vals[k], sc.q, CentralizerKind::odd_orthogonal, minus_tag(sc, k + 1), true)) {
            fs.push_back(bf.f);
            int sign = bf.role == Role::plus ? 1 : bf.role == Role::minus ? -1 : (k == 0 ? 1 : -1);
            for (int c : bf.f.coords) st.sbar[c] = sign;
        }
    }
    st.Gs_eps = EmbeddedGroup(n, fs);
    return st;
}

bool compatibility_check(const DescentOutcome& o, const std::vector<int>& t) {
    return sbar_of_t(o, t).s == stable_descent(o, t).sbar;
}

EmbeddedGroup normalize_torus_so2(const EmbeddedGroup& g) {
    auto fs = g.factors();
    for (auto& f : fs)
        if (f.type.is_split_torus_so2()) {
            f.type = FactorType::gl(1);
            f.signs.assign(f.coords.size(), 1);
        }
    return EmbeddedGroup(g.ambient(), fs);
}

EmbeddedGroup unbar(const EmbeddedGroup& g) {
    auto fs = g.factors();
    for (auto& f : fs)
        if (f.type.kind == Kind::Sp) f.type = FactorType::so_odd(f.type.rank);
    return EmbeddedGroup(g.ambient(), fs);
}

bool pushforward_check(const DescentOutcome& o, const std::vector<int>& t) {
    EmbeddedGroup lhs = normalize_torus_so2(arthur_L_of_s(o.G_eta, sbar_of_t(o, t)));
    return lhs == bar(stable_descent(o, t).Gs_eps);
}

std::pair<EmbeddedGroup, EmbeddedGroup> pushforward_levi(const DescentOutcome& o, const std::vector<int>& t, const EmbeddedGroup& L) {
    EmbeddedGroup ls = normalize_torus_so2(arthur_L_of_s(L, sbar_of_t(o, t)));
    return {ls, unbar(ls)};
}

EmbeddedGroup section_levi(const DescentOutcome& o, const EmbeddedGroup& Leps) {
    QSubspace a = a_space(Leps);
    std::vector<EmbeddedGroup> hits;
    for (auto& L : levis_containing(o.G_eta, o.R))
        if (a_space(L) == a) hits.push_back(L);
    if (hits.size() != 1)
        throw InvariantViolation("section of " + Leps.str() + " has " + std::to_string(hits.size()) + " candidates");
    return hits.front();
}

namespace {

std::vector<std::vector<int>> sign_vectors(std::size_t k) {
    std::vector<std::vector<int>> out;
    for (unsigned long mask = 0; mask < (1ul << k); ++mask) {
        std::vector<int> t(k);
        for (std::size_t i = 0; i < k; ++i) t[i] = (mask >> i & 1) ? -1 : 1;
        out.push_back(t);
    }
    return out;
}

Rational order_of(const DiagSubgroup& d) { return diag_index(d, DiagSubgroup::trivial(d.ambient_rank())); }

struct Context {
    const DescentOutcome& o;
    QForm form;
    QSubspace aM, aR, aMexc;
    std::vector<EmbeddedGroup> levis;
    std::map<std::vector<int>, StableDescent> stable;

    explicit Context(const DescentOutcome& out)
        : o(out), form(QForm::euclidean(out.scenario.n())), aM(a_space(out.M)), aR(a_space(out.R)), aMexc(a_space(out.Mexc)),
          levis(levis_containing(out.G_eta, out.R)) {
        for (auto& t : sign_vectors(out.scenario.levi.sizes.size())) stable.emplace(t, stable_descent(out, t));
    }
};

ENaturalEntry make_entry(const Context& cx, const std::vector<int>& t, const EmbeddedGroup& L, const DSquared& d_inst) {
    const DescentOutcome& o = cx.o;
    const StableDescent& st = cx.stable.at(t);
    ENaturalEntry e;
    e.t = t;
    e.s = st.s;
    e.L = L;
    e.sbar = sbar_of_t(o, t);
    std::tie(e.L_sbar, e.L_eps) = pushforward_levi(o, t, L);
    e.d_inst = d_inst;
    e.d_st = d_coefficient(a_space(st.gs.m_endo), a_space(e.L_eps), cx.aMexc, cx.form);
    return e;
}

void fill_coefficients(const Context& cx, ENaturalEntry& e) {
    const DescentOutcome& o = cx.o;
    const StableDescent& st = cx.stable.at(e.t);
    DiagSubgroup zM = metaplectic_center(o.M);
    e.c_inst = i_standard(o.R, e.L, e.sbar) / order_of(diag_intersect(dual_center(e.L), zM));
    e.c_st = i_meta(o.scenario.levi, e.s) /
             diag_index(diag_intersect(dual_center(st.gs.m_endo), dual_center(e.L_eps)), dual_center(st.gs.g_s));
    e.c_nonstandard = c_nonstandard_quotient(e.L_sbar, e.L_eps, o.Mexc_bar, o.Mexc);
}

}  // namespace

std::vector<ENaturalEntry> enumerate_E_natural(const DescentOutcome& o) {
    Context cx(o);
    std::vector<ENaturalEntry> out;
    for (const auto& L : cx.levis) {
        DSquared d = d_coefficient(cx.aM, a_space(L), cx.aR, cx.form);
        if (!d.nonzero()) continue;  // (E3)
        for (auto& [t, st] : cx.stable) {
            if (!arthur_is_elliptic(L, sbar_of_t(o, t))) continue;  // (E2)
            ENaturalEntry e = make_entry(cx, t, L, d);
            if (!e.d_st.nonzero()) continue;  // (E4)
            fill_coefficients(cx, e);
            out.push_back(std::move(e));
        }
    }
    return out;
}

bool DescentReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.ok; });
}

namespace {

class Recorder {
public:
    explicit Recorder(DescentReport& r) : r_(r) {}
    void check(const std::string& id, bool ok, const std::string& witness = {}) {
        auto it = index_.find(id);
        if (it == index_.end()) {
            it = index_.emplace(id, r_.checks.size()).first;
            r_.checks.push_back({id, true, {}});
        }
        CheckRecord& c = r_.checks[it->second];
        if (!ok && c.ok) {
            c.ok = false;
            c.witness = witness;
        }
    }

private:
    DescentReport& r_;
    std::map<std::string, std::size_t> index_;
};

std::string tstr(const std::vector<int>& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::string(t[i] > 0 ? "+" : "-");
    return s + ")";
}

std::string witness(const ENaturalEntry& e, const std::string& what) {
    return "t=" + tstr(e.t) + " L=" + e.L.str() + " L[sbar]=" + e.L_sbar.str() + " L^eps=" + e.L_eps.str() + ": " + what;
}

}  // namespace

DescentReport verify_descent(const DescentScenario& sc, const DescentHooks& hooks) {
    DescentReport rep;
    Recorder rec(rep);
    DescentOutcome o = descend(sc, hooks);
    Context cx(o);
    const int n = sc.n();

    // R is a Levi of M_eta and bar(M^!_eps) is elliptic for R at s0-bar
    bool r_levi = false;
    for (auto& L : levis_containing(o.M_eta, o.R)) r_levi |= L == o.R;
    rec.check("r-levi", r_levi, "R=" + o.R.str() + " M_eta=" + o.M_eta.str());
    bool r_ell = false;
    std::string r_w;
    try {
        r_ell = arthur_is_elliptic(o.R, o.sbar0) && normalize_torus_so2(arthur_L_of_s(o.R, o.sbar0)) == o.Mexc_bar;
        r_w = "R[s0bar]=" + arthur_L_of_s(o.R, o.sbar0).str() + " bar(M^!_eps)=" + o.Mexc_bar.str();
    } catch (const DomainError& e) {
        r_w = e.what();
    }
    rec.check("r-elliptic", r_ell, r_w);
    rec.check("a-space-r", cx.aR == cx.aMexc, "R=" + o.R.str());

    for (auto& [t, st] : cx.stable) {
        auto lhs = sbar_of_t(o, t).s;
        std::string w = "t=" + tstr(t) + " tau-side=";
        for (int x : lhs) w += x > 0 ? "+" : "-";
        w += " descent-side=";
        for (int x : st.sbar) w += x > 0 ? "+" : "-";
        rec.check("sbar-compat", lhs == st.sbar, w);
        bool push = false;
        std::string pw;
        try {
            EmbeddedGroup g = normalize_torus_so2(arthur_L_of_s(o.G_eta, sbar_of_t(o, t)));
            push = g == bar(st.Gs_eps);
            pw = "t=" + tstr(t) + " G_eta[sbar]=" + g.str() + " bar(G[s]_eps[s])=" + bar(st.Gs_eps).str();
        } catch (const DomainError& e) {
            pw = "t=" + tstr(t) + ": " + e.what();
        }
        rec.check("pushforward", push, pw);
    }

    // E-natural
    std::vector<ENaturalEntry> nat;
    std::map<const EmbeddedGroup*, DSquared> dL;
    for (const auto& L : cx.levis) {
        DSquared d = d_coefficient(cx.aM, a_space(L), cx.aR, cx.form);
        if (!d.nonzero()) continue;
        // finiteness of Z_L cap Z_M-meta whenever (E3) holds
        DiagSubgroup zz = diag_intersect(dual_center(L), metaplectic_center(o.M));
        rec.check("einst-finite", zz.is_finite(), "L=" + L.str());
        dL[&L] = d;
        for (auto& [t, st] : cx.stable) {
            ArthurElement sb = sbar_of_t(o, t);
            bool ell = false;
            try {
                ell = arthur_is_elliptic(L, sb);
            } catch (const DomainError&) {
                ell = false;
            }
            if (!ell) continue;
            ENaturalEntry e;
            try {
                e = make_entry(cx, t, L, d);
            } catch (const DomainError& ex) {
                rec.check("pushforward-levi", false, "t=" + tstr(t) + " L=" + L.str() + ": " + ex.what());
                continue;
            }
            if (!e.d_st.nonzero()) continue;
            try {
                fill_coefficients(cx, e);
            } catch (const DomainError& ex) {
                rec.check("coefficients", false, witness(e, ex.what()));
                continue;
            }
            nat.push_back(std::move(e));
        }
    }
    rep.e_natural = nat.size();

    // E-st, built from its own definition
    std::set<std::pair<std::vector<int>, EmbeddedGroup>> est;
    for (auto& [t, st] : cx.stable) {
        QSubspace aMe = a_space(st.gs.m_endo);
        for (auto& Le : levis_containing(st.Gs_eps, o.Mexc))
            if (d_coefficient(aMe, a_space(Le), cx.aMexc, cx.form).nonzero()) est.insert({t, normalize_torus_so2(Le)});
    }
    rep.e_st = est.size();
    std::set<std::pair<std::vector<int>, EmbeddedGroup>> image;
    bool injective = true, into = true, section_ok = true;
    std::string w_est;
    for (const auto& e : nat) {
        auto key = std::make_pair(e.t, e.L_eps);
        if (!image.insert(key).second) {
            injective = false;
            w_est = witness(e, "two entries with the same image");
        }
        if (!est.count(key)) {
            into = false;
            w_est = witness(e, "image not in E^st");
        }
        try {
            if (section_levi(o, e.L_eps) != e.L) {
                section_ok = false;
                w_est = witness(e, "section does not return L");
            }
        } catch (const DomainError& ex) {
            section_ok = false;
            w_est = witness(e, ex.what());
        }
    }
    bool onto = image.size() == est.size();
    if (!onto && w_est.empty()) {
        for (auto& k : est)
            if (!image.count(k)) {
                w_est = "t=" + tstr(k.first) + " L^eps=" + k.second.str() + " not reached";
                break;
            }
    }
    rec.check("est-bijective", injective && into && onto && section_ok, w_est);

    // E-inst, built from its own definition
    std::map<std::pair<EmbeddedGroup, std::vector<int>>, std::size_t> fibers;
    for (const auto& L : cx.levis) {
        if (!dL.count(&L)) continue;
        for (auto& s : e_set_arthur(L, o.R, o.sbar0)) fibers[{L, s.s}] = 0;
    }
    rep.e_inst = fibers.size();
    bool surj = true;
    std::string w_inst;
    for (const auto& e : nat) {
        auto key = std::make_pair(e.L, arthur_canonical(e.L, e.sbar).s);
        auto it = fibers.find(key);
        if (it == fibers.end()) {
            surj = false;
            w_inst = witness(e, "class of sbar outside E^inst");
            continue;
        }
        ++it->second;
    }
    for (auto& [key, count] : fibers) {
        DiagSubgroup zz = diag_intersect(dual_center(key.first), metaplectic_center(o.M));
        if (!zz.is_finite()) continue;
        Rational want = order_of(zz);
        if (Rational(static_cast<long long>(count)) != want) {
            surj = false;
            w_inst = "L=" + key.first.str() + " fiber " + std::to_string(count) + " expected " + to_string(want);
        }
    }
    rec.check("einst-fibers", surj, w_inst);

    // coefficient identities
    DiagSubgroup triv = DiagSubgroup::trivial(n);
    DiagSubgroup zMexc0 = dual_center0(o.Mexc);
    for (const auto& e : nat) {
        const StableDescent& st = cx.stable.at(e.t);
        DiagSubgroup zMendo0 = dual_center0(st.gs.m_endo);
        DiagSubgroup zLs = dual_center(e.L_sbar), zLe = dual_center(e.L_eps);
        rec.check("d-equality", e.d_inst == e.d_st, witness(e, to_string(e.d_inst.value) + " vs " + to_string(e.d_st.value)));
        Rational rhs_inst = 1 / order_of(diag_intersect(zLs, zMendo0));
        rec.check("cinst", e.c_inst == rhs_inst, witness(e, to_string(e.c_inst) + " vs " + to_string(rhs_inst)));
        Rational rhs_st = 1 / order_of(diag_intersect(zLe, zMendo0));
        rec.check("cst", e.c_st == rhs_st, witness(e, to_string(e.c_st) + " vs " + to_string(rhs_st)));
        Rational ratio = diag_index(diag_intersect(zLe, zMexc0), diag_intersect(zLs, zMexc0));
        rec.check("cinst-cst", e.c_inst / e.c_st == ratio, witness(e, to_string(e.c_inst / e.c_st) + " vs " + to_string(ratio)));
        rec.check("final", e.c_st / e.c_inst == e.c_nonstandard,
                  witness(e, to_string(e.c_st / e.c_inst) + " vs " + to_string(e.c_nonstandard)));
        Rational closed = 1;
        for (const auto& f : e.L_eps.factors()) {
            if (f.type.kind != Kind::SOodd) continue;
            bool core = std::any_of(o.Mexc.factors().begin(), o.Mexc.factors().end(), [&](const EmbeddedFactor& h) {
                return h.type.kind == Kind::SOodd && std::find(f.coords.begin(), f.coords.end(), h.coords[0]) != f.coords.end();
            });
            closed *= c_nonstandard_closed(f.type.rank, core ? 1 : 0);
        }
        rec.check("z-closed-form", closed == e.c_nonstandard && closed == 1 / ratio,
                  witness(e, "closed " + to_string(closed) + " raw " + to_string(e.c_nonstandard) + " index " + to_string(ratio)));
        std::pair<const EmbeddedGroup*, const EmbeddedGroup*> pairs[] = {
            {&o.G_eta, &e.L}, {&e.L, &o.R}, {&e.L_sbar, &o.Mexc_bar}, {&e.L_eps, &o.Mexc}, {&st.gs.g_s, &st.gs.m_endo}};
        for (auto [h, s] : pairs) {
            bool ok = false;
            try {
                ok = arthur_product_check(dual_center(*h), dual_center(*s), dual_center0(*s));
            } catch (const DomainError&) {
                ok = false;
            }
            rec.check("product-law", ok, witness(e, h->str() + " / " + s->str()));
        }
    }
    return rep;
}

}  // namespace wfl
