#include "wfl/endoscopy.hpp"

#include <map>
#include <numeric>
#include <set>

namespace wfl {

std::vector<EllipticDatumMeta> elliptic_data_meta(int m) {
    if (m < 0) throw DomainError("negative rank");
    std::vector<EllipticDatumMeta> out;
    for (int a = 0; a <= m; ++a) out.push_back({a, m - a});
    return out;
}

GroupType endoscopic_group_meta(const LeviDatum& levi, const EllipticDatumMeta& d) {
    if (d.m() != levi.m) throw DomainError("elliptic datum does not match the metaplectic rank");
    std::vector<FactorType> f;
    for (int s : levi.sizes) f.push_back(FactorType::gl(s));
    f.push_back(FactorType::so_odd(d.m_prime));
    f.push_back(FactorType::so_odd(d.m_dblprime));
    return GroupType(f);
}

std::vector<SElement> e_set(const LeviDatum& levi, const EllipticDatumMeta& s0) {
    if (s0.m() != levi.m) throw DomainError("elliptic datum does not match the metaplectic rank");
    const std::size_t k = levi.sizes.size();
    std::vector<SElement> out;
    for (unsigned long mask = 0; mask < (1ul << k); ++mask) {
        SElement s{s0, std::vector<int>(k, 1)};
        for (std::size_t i = 0; i < k; ++i)
            if (mask >> i & 1) s.signs[i] = -1;
        out.push_back(s);
    }
    std::sort(out.begin(), out.end(), [](const SElement& a, const SElement& b) { return a.signs > b.signs; });
    return out;
}

namespace {

std::vector<int> block_offsets(const LeviDatum& levi) {
    std::vector<int> off{0};
    for (int s : levi.sizes) off.push_back(off.back() + s);
    return off;
}

std::vector<int> range(int from, int count) {
    std::vector<int> v(count);
    std::iota(v.begin(), v.end(), from);
    return v;
}

void check_signs(const LeviDatum& levi, const SElement& s) {
    if (s.signs.size() != levi.sizes.size()) throw DomainError("sign vector does not match the Levi");
    if (s.base.m() != levi.m) throw DomainError("elliptic datum does not match the metaplectic rank");
    for (int x : s.signs)
        if (x != 1 && x != -1) throw DomainError("signs must be +-1");
}

}  // namespace

EmbeddedGroup metaplectic_levi(const LeviDatum& levi) {
    auto off = block_offsets(levi);
    std::vector<EmbeddedFactor> fs;
    for (std::size_t i = 0; i < levi.sizes.size(); ++i)
        fs.push_back({FactorType::gl(levi.sizes[i]), range(off[i], levi.sizes[i]), {}});
    fs.push_back({FactorType::sp(levi.m), range(off.back(), levi.m), {}});
    return EmbeddedGroup(levi.n(), fs);
}

GofS g_of_s(const LeviDatum& levi, const SElement& s) {
    check_signs(levi, s);
    auto off = block_offsets(levi);
    const int n = levi.n();
    std::vector<int> cp = range(off.back(), s.base.m_prime);
    std::vector<int> cdp = range(off.back() + s.base.m_prime, s.base.m_dblprime);
    std::vector<EmbeddedFactor> mfs;
    std::vector<int> gp = cp, gdp = cdp;
    for (std::size_t i = 0; i < levi.sizes.size(); ++i) {
        auto c = range(off[i], levi.sizes[i]);
        mfs.push_back({FactorType::gl(levi.sizes[i]), c, {}});
        auto& dst = s.signs[i] > 0 ? gp : gdp;
        dst.insert(dst.end(), c.begin(), c.end());
    }
    mfs.push_back({FactorType::so_odd(s.base.m_prime), cp, {}});
    mfs.push_back({FactorType::so_odd(s.base.m_dblprime), cdp, {}});
    GofS out;
    out.n_prime = static_cast<int>(gp.size());
    out.n_dblprime = static_cast<int>(gdp.size());
    out.group = GroupType({FactorType::so_odd(out.n_prime), FactorType::so_odd(out.n_dblprime)});
    out.g_s = EmbeddedGroup(n, {{FactorType::so_odd(out.n_prime), gp, {}}, {FactorType::so_odd(out.n_dblprime), gdp, {}}});
    out.m_endo = EmbeddedGroup(n, mfs);
    return out;
}

std::vector<int> z_torsion(const SElement& s) {
    std::vector<int> z = s.signs;
    z.push_back(1);
    return z;
}

namespace {

void check_class(const EndoClass& c, const SElement& s) {
    if (c.blocks.size() != s.signs.size()) throw DomainError("class does not match the sign vector");
    if (static_cast<int>(c.prime.size()) != 2 * s.base.m_prime + 1 ||
        static_cast<int>(c.dblprime.size()) != 2 * s.base.m_dblprime + 1)
        throw InvariantViolation("orthogonal multisets do not match the elliptic datum");
}

void append_with_inverses(Multiset<Rational>& out, const Multiset<Rational>& b) {
    for (const auto& x : b) {
        out.push_back(x);
        out.push_back(1 / x);
    }
}

}  // namespace

Multiset<Rational> mu1_via_gs(const EndoClass& c, const SElement& s) {
    check_class(c, s);
    Multiset<Rational> p = c.prime, dp = c.dblprime;
    for (std::size_t i = 0; i < c.blocks.size(); ++i) append_with_inverses(s.signs[i] > 0 ? p : dp, c.blocks[i]);
    return correspond_mu(p, dp);
}

Multiset<Rational> mu_via_levi(const EndoClass& c, const SElement& s) {
    check_class(c, s);
    Multiset<Rational> out = correspond_mu(c.prime, c.dblprime);
    auto z = z_torsion(s);
    for (std::size_t i = 0; i < c.blocks.size(); ++i) {
        Multiset<Rational> b;
        for (const auto& x : c.blocks[i]) b.push_back(z[i] * x);
        append_with_inverses(out, b);
    }
    return sorted(out);
}

bool correspond_mu1_check(const EndoClass& c, const SElement& s) { return mu1_via_gs(c, s) == mu_via_levi(c, s); }

Rational i_meta(const LeviDatum& levi, const SElement& s) {
    GofS g = g_of_s(levi, s);
    EmbeddedGroup m = metaplectic_levi(levi);
    EmbeddedGroup sp = standard_embedding(GroupType({FactorType::sp(levi.n())}));
    return diag_index(dual_center(g.m_endo), metaplectic_center(m)) /
           diag_index(dual_center(g.g_s), metaplectic_center(sp));
}

std::pair<LeviDatum, EllipticDatumMeta> datum_to_levi(const SemisimpleProfile& p) {
    if (p.plus_count < 0 || p.minus_count < 0 || p.plus_count % 2 || p.minus_count % 2)
        throw InvalidSemisimpleProfile("multiplicities of +1 and -1 must be even and non-negative");
    LeviDatum levi;
    for (std::size_t k = 0; k < p.labels.size(); ++k) {
        const auto& [a, mult] = p.labels[k];
        if (mult < 1) throw InvalidSemisimpleProfile("label multiplicity must be positive");
        if (a == 0 || a == 1 || a == -1) throw InvalidSemisimpleProfile("labels must avoid 0 and +-1");
        for (std::size_t l = 0; l < k; ++l)
            if (p.labels[l].first == a || p.labels[l].first * a == 1)
                throw InvalidSemisimpleProfile("labels must be pairwise distinct and non-inverse");
        levi.sizes.push_back(mult);
    }
    std::sort(levi.sizes.rbegin(), levi.sizes.rend());
    levi.m = (p.plus_count + p.minus_count) / 2;
    return {levi, {p.plus_count / 2, p.minus_count / 2}};
}

std::vector<SpEllipticDatum> sp_elliptic_data(int m) {
    if (m < 0) throw DomainError("negative rank");
    std::vector<SpEllipticDatum> out;
    for (int b = 0; b <= m; ++b) {
        for (FormClass f : {FormClass::split, FormClass::unram_nonsplit, FormClass::ramified}) {
            if (b == 0 && f != FormClass::split) continue;
            if (b == 1 && f == FormClass::split) continue;  // hyperbolic plane: not elliptic
            out.push_back({m - b, FactorType::so_even(b, f)});
        }
    }
    std::sort(out.begin(), out.end(), [](const SpEllipticDatum& a, const SpEllipticDatum& b) {
        return a.m_prime != b.m_prime ? a.m_prime > b.m_prime : a.even_part < b.even_part;
    });
    return out;
}

std::vector<UEllipticDatum> u_elliptic_data(int m) {
    if (m < 0) throw DomainError("negative rank");
    std::vector<UEllipticDatum> out;
    for (int a = m; 2 * a >= m; --a) out.push_back({a, m - a});
    return out;
}

EmbeddedGroup arthur_L_of_s(const EmbeddedGroup& L, const ArthurElement& s) {
    const int n = L.ambient();
    if (static_cast<int>(s.s.size()) != n) throw DomainError("element has the wrong number of coordinates");
    std::vector<EmbeddedFactor> out;
    for (const auto& f : L.factors()) {
        std::vector<int> pc, ps, mc, ms;
        for (std::size_t j = 0; j < f.coords.size(); ++j) {
            int c = f.coords[j];
            if (s.s[c] == 1) {
                pc.push_back(c);
                ps.push_back(f.signs[j]);
            } else if (s.s[c] == -1) {
                mc.push_back(c);
                ms.push_back(f.signs[j]);
            } else {
                throw DomainError("element entries must be +-1");
            }
        }
        const FactorType& t = f.type;
        auto split_rank = [&](int width, int per) {
            if (width % per) throw UnsupportedFactor("centralizer does not split " + t.str() + " evenly");
            return width / per;
        };
        if (t.a_dimension()) {
            if (mc.empty() || pc.empty()) {
                out.push_back(f);
                continue;
            }
            out.push_back({FactorType::gl(split_rank(static_cast<int>(pc.size()), t.degree), t.degree, t.ramified), pc, ps});
            out.push_back({FactorType::gl(split_rank(static_cast<int>(mc.size()), t.degree), t.degree, t.ramified), mc, ms});
        } else if (t.kind == Kind::Sp) {
            FormClass form = FormClass::split;
            for (std::size_t j = 0; j < mc.size(); ++j) {
                if (j && s.even_form[mc[j]] != form) throw DomainError("inconsistent even form classes");
                form = s.even_form[mc[j]];
            }
            out.push_back({FactorType::sp(static_cast<int>(pc.size())), pc, {}});
            out.push_back({FactorType::so_even(static_cast<int>(mc.size()), form), mc, {}});
        } else if (t.kind == Kind::U) {
            if (!pc.empty()) out.push_back({FactorType::u(split_rank(static_cast<int>(pc.size()), t.degree), t.degree, t.ramified), pc, {}});
            if (!mc.empty()) out.push_back({FactorType::u(split_rank(static_cast<int>(mc.size()), t.degree), t.degree, t.ramified), mc, {}});
        } else {
            throw UnsupportedFactor("no endoscopic table for " + t.str());
        }
    }
    return EmbeddedGroup(n, out);
}

bool arthur_is_elliptic(const EmbeddedGroup& L, const ArthurElement& s) {
    return a_space(arthur_L_of_s(L, s)).dim() == a_space(L).dim();
}

namespace {

// Coordinate sets flipped by the sign part of Z(g): GL and U factors.
std::vector<std::vector<int>> sign_units(const EmbeddedGroup& g) {
    std::vector<std::vector<int>> out;
    for (const auto& f : g.factors())
        if (f.type.a_dimension() || f.type.kind == Kind::U) out.push_back(f.coords);
    return out;
}

}  // namespace

ArthurElement arthur_canonical(const EmbeddedGroup& L, const ArthurElement& s) {
    auto units = sign_units(L);
    ArthurElement best = s;
    for (unsigned long mask = 1; mask < (1ul << units.size()); ++mask) {
        ArthurElement t = s;
        for (std::size_t u = 0; u < units.size(); ++u)
            if (mask >> u & 1)
                for (int c : units[u]) t.s[c] = -t.s[c];
        if (t.s > best.s) best = t;
    }
    return best;
}

std::vector<ArthurElement> e_set_arthur(const EmbeddedGroup& L, const EmbeddedGroup& R, const ArthurElement& s0) {
    auto units = sign_units(R);
    std::map<std::vector<int>, ArthurElement> found;
    for (unsigned long mask = 0; mask < (1ul << units.size()); ++mask) {
        ArthurElement t = s0;
        for (std::size_t u = 0; u < units.size(); ++u)
            if (mask >> u & 1)
                for (int c : units[u]) t.s[c] = -t.s[c];
        if (!arthur_is_elliptic(L, t)) continue;
        ArthurElement c = arthur_canonical(L, t);
        found.emplace(c.s, c);
    }
    std::vector<ArthurElement> out;
    for (auto it = found.rbegin(); it != found.rend(); ++it) out.push_back(it->second);
    return out;
}

Rational i_standard(const EmbeddedGroup& R, const EmbeddedGroup& L, const ArthurElement& s) {
    EmbeddedGroup Rs = arthur_L_of_s(R, s), Ls = arthur_L_of_s(L, s);
    return diag_index(dual_center(Rs), dual_center(R)) / diag_index(dual_center(Ls), dual_center(L));
}

}  // namespace wfl
