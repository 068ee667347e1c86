#include "wfl/catalog.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace wfl {

std::string to_string(FormClass f) {
    switch (f) {
        case FormClass::split: return "split";
        case FormClass::unram_nonsplit: return "unram_nonsplit";
        case FormClass::ramified: return "ramified";
    }
    return "?";
}

FormClass parse_form_class(const std::string& s) {
    if (s == "split") return FormClass::split;
    if (s == "unram_nonsplit") return FormClass::unram_nonsplit;
    if (s == "ramified") return FormClass::ramified;
    throw DomainError("unknown form class '" + s + "'");
}

int FactorType::width() const {
    switch (kind) {
        case Kind::GL:
        case Kind::U: return degree * rank;
        default: return rank;
    }
}

std::string FactorType::str() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::GL:
            os << "GL(" << rank;
            if (degree != 1) os << ",ext=" << degree;
            break;
        case Kind::U:
            os << "U(" << rank;
            if (degree != 1) os << ",base=" << degree;
            break;
        case Kind::Sp: os << "Sp(" << 2 * rank; break;
        case Kind::SOodd: os << "SO(" << 2 * rank + 1; break;
        case Kind::SOeven: os << "SO(" << 2 * rank << "," << to_string(form); break;
    }
    if (ramified) os << ",ram";
    os << ")";
    return os.str();
}

GroupType::GroupType(std::vector<FactorType> factors) : f_(std::move(factors)) {
    for (const auto& f : f_) {
        if (f.rank < 0 || f.degree < 1) throw DomainError("invalid factor " + f.str());
        if ((f.kind == Kind::GL || f.kind == Kind::U) && f.rank < 1)
            throw DomainError("GL and U factors need rank >= 1");
    }
    std::sort(f_.begin(), f_.end());
}

int GroupType::width() const {
    int w = 0;
    for (const auto& f : f_) w += f.width();
    return w;
}

int GroupType::a_dimension() const {
    int a = 0;
    for (const auto& f : f_) a += f.a_dimension();
    return a;
}

std::string GroupType::str() const {
    if (f_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < f_.size(); ++i) {
        if (i) s += " x ";
        s += f_[i].str();
    }
    return s;
}

GroupType normalize(const GroupType& g) {
    std::vector<FactorType> out;
    for (const auto& f : g.factors()) {
        if (f.is_trivial()) continue;
        out.push_back(f.is_split_torus_so2() ? FactorType::gl(1) : f);
    }
    return GroupType(out);
}

bool same_group(const GroupType& a, const GroupType& b) { return normalize(a) == normalize(b); }

GroupType bar(const GroupType& g) {
    std::vector<FactorType> out;
    for (const auto& f : g.factors()) {
        if (f.kind != Kind::SOodd) {
            out.push_back(f);
        } else if (f.rank > 0) {
            out.push_back(FactorType::sp(f.rank));
        }
    }
    return GroupType(out);
}

bool is_unramified(const GroupType& g) {
    return std::none_of(g.factors().begin(), g.factors().end(), [](const FactorType& f) {
        return f.ramified || (f.kind == Kind::SOeven && f.form == FormClass::ramified);
    });
}

int LeviDatum::n() const { return std::accumulate(sizes.begin(), sizes.end(), m); }

std::string LeviDatum::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < sizes.size(); ++i) os << (i ? "," : "") << sizes[i];
    os << ";m=" << m << ")";
    return os.str();
}

namespace {

// Non-increasing sequences of positive integers with sum <= bound.
void multisets(int bound, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    out.push_back(cur);
    for (int p = std::min(bound, max_part); p >= 1; --p) {
        cur.push_back(p);
        multisets(bound - p, p, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> multisets(int bound) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    multisets(bound, bound, cur, out);
    return out;
}

}  // namespace

std::vector<LeviDatum> levi_data(int n) {
    if (n < 0) throw DomainError("negative rank");
    std::vector<LeviDatum> out;
    for (auto& s : multisets(n)) {
        int total = std::accumulate(s.begin(), s.end(), 0);
        out.push_back({s, n - total});
    }
    std::sort(out.begin(), out.end());
    return out;
}

BigInt weyl_relative_order(const LeviDatum& d) {
    BigInt order = 1;
    std::map<int, int> mult;
    for (int s : d.sizes) {
        order *= 2;
        ++mult[s];
    }
    for (const auto& [size, c] : mult)
        for (int k = 2; k <= c; ++k) order *= k;
    return order;
}

GroupType levi_group_type(const LeviDatum& d) {
    std::vector<FactorType> f;
    for (int s : d.sizes) f.push_back(FactorType::gl(s));
    f.push_back(FactorType::sp(d.m));
    return GroupType(f);
}

EmbeddedGroup::EmbeddedGroup(int ambient, std::vector<EmbeddedFactor> factors) : n_(ambient) {
    std::vector<bool> used(ambient, false);
    for (auto& f : factors) {
        if (f.type.is_trivial()) {
            if (!f.coords.empty()) throw LayoutMismatch("rank-0 factor with coordinates");
            continue;
        }
        if (static_cast<int>(f.coords.size()) != f.type.width())
            throw LayoutMismatch("factor " + f.type.str() + " has the wrong number of coordinates");
        if (f.signs.empty()) f.signs.assign(f.coords.size(), 1);
        if (f.signs.size() != f.coords.size()) throw LayoutMismatch("sign list length mismatch");
        for (std::size_t j = 0; j < f.coords.size(); ++j) {
            int c = f.coords[j];
            if (c < 0 || c >= ambient || used[c]) throw LayoutMismatch("coordinates overlap or out of range");
            used[c] = true;
            if (f.signs[j] != 1 && f.signs[j] != -1) throw LayoutMismatch("signs must be +-1");
        }
        std::vector<std::pair<int, int>> cs;
        for (std::size_t j = 0; j < f.coords.size(); ++j)
            cs.emplace_back(f.coords[j], f.type.a_dimension() ? f.signs[j] : 1);
        std::sort(cs.begin(), cs.end());
        int flip = cs.front().second;
        EmbeddedFactor g{f.type, {}, {}};
        for (auto [c, s] : cs) {
            g.coords.push_back(c);
            g.signs.push_back(s * flip);
        }
        f_.push_back(std::move(g));
    }
    std::sort(f_.begin(), f_.end());
}

GroupType EmbeddedGroup::type() const {
    std::vector<FactorType> t;
    for (const auto& f : f_) t.push_back(f.type);
    return GroupType(t);
}

std::vector<int> EmbeddedGroup::covered() const {
    std::vector<int> c;
    for (const auto& f : f_) c.insert(c.end(), f.coords.begin(), f.coords.end());
    std::sort(c.begin(), c.end());
    return c;
}

std::string EmbeddedGroup::str() const {
    if (f_.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < f_.size(); ++i) {
        if (i) os << " x ";
        os << f_[i].type.str() << "[";
        for (std::size_t j = 0; j < f_[i].coords.size(); ++j) {
            if (j) os << ",";
            if (f_[i].signs[j] < 0) os << "-";
            os << f_[i].coords[j];
        }
        os << "]";
    }
    return os.str();
}

EmbeddedGroup standard_embedding(const GroupType& g) {
    std::vector<EmbeddedFactor> fs;
    int next = 0;
    for (const auto& f : g.factors()) {
        EmbeddedFactor e{f, {}, {}};
        for (int j = 0; j < f.width(); ++j) e.coords.push_back(next++);
        fs.push_back(e);
    }
    return EmbeddedGroup(next, fs);
}

DiagSubgroup dual_center(const EmbeddedGroup& g) {
    const int n = g.ambient();
    IntMat chars;
    auto unit = [n](int c, long long v) {
        IntVec e(n, 0);
        e[c] = v;
        return e;
    };
    std::vector<bool> cov(n, false);
    for (const auto& f : g.factors()) {
        for (int c : f.coords) cov[c] = true;
        const auto& cs = f.coords;
        if (f.type.a_dimension()) {
            // t_c^{sign} all equal
            for (std::size_t j = 1; j < cs.size(); ++j) {
                IntVec v(n, 0);
                v[cs[j]] = f.signs[j];
                v[cs[0]] -= f.signs[0];
                chars.push_back(v);
            }
        } else if (f.type.kind == Kind::Sp) {
            for (int c : cs) chars.push_back(unit(c, 1));
        } else {
            // mu_2 on the diagonal
            for (std::size_t j = 1; j < cs.size(); ++j) {
                IntVec v(n, 0);
                v[cs[j]] = 1;
                v[cs[0]] = -1;
                chars.push_back(v);
            }
            chars.push_back(unit(cs[0], 2));
        }
    }
    for (int c = 0; c < n; ++c)
        if (!cov[c]) chars.push_back(unit(c, 1));
    return DiagSubgroup(IntLattice(n, chars));
}

DiagSubgroup dual_center0(const EmbeddedGroup& g) { return diag_identity_component(dual_center(g)); }

DiagSubgroup metaplectic_center(const EmbeddedGroup& g) {
    for (const auto& f : g.factors())
        if (f.type.kind != Kind::GL && f.type.kind != Kind::Sp)
            throw DomainError("metaplectic center needs a product of GL and Sp factors");
    return dual_center(g);
}

QSubspace a_space(const EmbeddedGroup& g) {
    QMat vs;
    for (const auto& f : g.factors()) {
        if (!f.type.a_dimension()) continue;
        QVec v(g.ambient(), 0);
        for (std::size_t j = 0; j < f.coords.size(); ++j) v[f.coords[j]] = f.signs[j];
        vs.push_back(v);
    }
    return QSubspace(g.ambient(), vs);
}

EmbeddedGroup bar(const EmbeddedGroup& g) {
    std::vector<EmbeddedFactor> fs = g.factors();
    for (auto& f : fs)
        if (f.type.kind == Kind::SOodd) f.type = FactorType::sp(f.type.rank);
    return EmbeddedGroup(g.ambient(), fs);
}

namespace {

using Options = std::vector<std::vector<EmbeddedFactor>>;

// Standard Levis of a single factor, one per conjugacy class.
Options standard_levis(const EmbeddedFactor& h) {
    Options out;
    const FactorType& t = h.type;
    if (t.kind == Kind::GL || t.is_split_torus_so2()) {
        // partitions of k
        for (auto& parts : multisets(t.rank)) {
            if (std::accumulate(parts.begin(), parts.end(), 0) != t.rank) continue;
            std::vector<EmbeddedFactor> fs;
            int pos = 0;
            for (int p : parts) {
                int w = p * t.degree;
                EmbeddedFactor f{FactorType::gl(p, t.degree, t.ramified), {}, {}};
                for (int j = 0; j < w; ++j) {
                    f.coords.push_back(h.coords[pos + j]);
                    f.signs.push_back(h.signs[pos + j]);
                }
                pos += w;
                fs.push_back(f);
            }
            out.push_back(fs);
        }
        return out;
    }
    const int unit = t.kind == Kind::U ? 2 : 1;  // GL_K(k) inside U(2k)
    const int block_deg = t.kind == Kind::U ? 2 * t.degree : 1;
    for (auto& parts : multisets(t.rank / unit)) {
        int used = 0;
        for (int p : parts) used += unit * p;
        int core = t.rank - used;
        if (t.kind == Kind::SOeven) {
            if (t.form == FormClass::split && core == 1) continue;
            if (t.form != FormClass::split && core == 0) continue;
        }
        std::vector<EmbeddedFactor> fs;
        int pos = 0;
        for (int p : parts) {
            EmbeddedFactor f{FactorType::gl(p, block_deg, t.ramified), {}, {}};
            for (int j = 0; j < p * block_deg; ++j) f.coords.push_back(h.coords[pos + j]);
            pos += p * block_deg;
            fs.push_back(f);
        }
        FactorType ct = t;
        ct.rank = core;
        EmbeddedFactor c{ct, std::vector<int>(h.coords.begin() + pos, h.coords.end()), {}};
        fs.push_back(c);
        out.push_back(fs);
    }
    return out;
}

struct Block {
    int k;
    int degree;
    std::vector<int> coords;
    std::vector<int> signs;
};

// Levis of one factor h containing the given blocks and optional core.
Options levis_in_factor(const EmbeddedFactor& h, const std::vector<Block>& blocks,
                        const EmbeddedFactor* core) {
    Options out;
    const FactorType& t = h.type;
    const bool gl = !t.is_classical();
    const std::size_t nb = blocks.size();
    // assignment: -1 core, otherwise part index; rel sign per block
    std::vector<int> part(nb, -1), rel(nb, 1);
    std::function<void(std::size_t, int)> rec = [&](std::size_t b, int nparts) {
        if (b == nb) {
            std::vector<EmbeddedFactor> fs;
            std::vector<int> core_coords;
            if (core) core_coords = core->coords;
            for (int p = 0; p < nparts; ++p) {
                EmbeddedFactor f{FactorType::gl(0, blocks[0].degree, t.ramified), {}, {}};
                for (std::size_t i = 0; i < nb; ++i) {
                    if (part[i] != p) continue;
                    f.type.rank += blocks[i].k;
                    for (std::size_t j = 0; j < blocks[i].coords.size(); ++j) {
                        f.coords.push_back(blocks[i].coords[j]);
                        f.signs.push_back(blocks[i].signs[j] * rel[i]);
                    }
                }
                fs.push_back(f);
            }
            if (!gl) {
                for (std::size_t i = 0; i < nb; ++i)
                    if (part[i] < 0) core_coords.insert(core_coords.end(), blocks[i].coords.begin(),
                                                        blocks[i].coords.end());
                FactorType ct = t;
                ct.rank = static_cast<int>(core_coords.size()) / (t.kind == Kind::U ? t.degree : 1);
                if (t.kind == Kind::SOeven && t.form == FormClass::split && ct.rank == 1) return;
                fs.push_back(EmbeddedFactor{ct, core_coords, {}});
            }
            out.push_back(fs);
            return;
        }
        if (!gl) {
            part[b] = -1;
            rec(b + 1, nparts);
        }
        for (int p = 0; p < nparts; ++p) {
            part[b] = p;
            for (int s : {1, -1}) {
                if (gl && s == -1) continue;
                rel[b] = s;
                rec(b + 1, nparts);
            }
        }
        part[b] = nparts;
        rel[b] = 1;
        rec(b + 1, nparts + 1);
        rel[b] = 1;
    };
    rec(0, 0);
    return out;
}

std::vector<EmbeddedGroup> cartesian(int ambient, const std::vector<Options>& per) {
    std::vector<EmbeddedGroup> out;
    std::vector<EmbeddedFactor> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == per.size()) {
            out.emplace_back(ambient, cur);
            return;
        }
        for (const auto& opt : per[i]) {
            std::size_t mark = cur.size();
            cur.insert(cur.end(), opt.begin(), opt.end());
            rec(i + 1);
            cur.resize(mark);
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::vector<EmbeddedGroup> levi_enumerate(const EmbeddedGroup& g) {
    std::vector<Options> per;
    for (const auto& h : g.factors()) per.push_back(standard_levis(h));
    return cartesian(g.ambient(), per);
}

std::vector<EmbeddedGroup> levis_containing(const EmbeddedGroup& g, const EmbeddedGroup& r) {
    if (g.ambient() != r.ambient()) throw EmbeddingInvalid("ambient mismatch");
    if (g.covered() != r.covered()) throw EmbeddingInvalid("Levi must share the coordinates of the group");
    std::vector<Options> per;
    std::vector<bool> placed(r.factors().size(), false);
    for (const auto& h : g.factors()) {
        std::map<int, int> hsign;
        for (std::size_t j = 0; j < h.coords.size(); ++j) hsign[h.coords[j]] = h.signs[j];
        std::vector<Block> blocks;
        const EmbeddedFactor* core = nullptr;
        for (std::size_t i = 0; i < r.factors().size(); ++i) {
            const auto& f = r.factors()[i];
            int inside = 0;
            for (int c : f.coords) inside += hsign.count(c);
            if (inside == 0) continue;
            if (inside != static_cast<int>(f.coords.size()))
                throw EmbeddingInvalid("factor " + f.type.str() + " straddles two factors");
            placed[i] = true;
            if (f.type.is_classical()) {
                if (!h.type.is_classical() || f.type.kind != h.type.kind || core)
                    throw EmbeddingInvalid("unexpected classical factor " + f.type.str());
                if (f.type.kind == Kind::U && f.type.degree != h.type.degree)
                    throw EmbeddingInvalid("unitary base degree mismatch");
                if (f.type.kind == Kind::SOeven && f.type.form != h.type.form)
                    throw EmbeddingInvalid("even orthogonal form class mismatch");
                core = &f;
                continue;
            }
            int deg = f.type.kind == Kind::GL ? f.type.degree : 1;
            int want = h.type.kind == Kind::U ? 2 * h.type.degree : h.type.is_classical() ? 1 : h.type.degree;
            if (deg != want) throw EmbeddingInvalid("block " + f.type.str() + " has the wrong degree");
            Block b{f.type.kind == Kind::GL ? f.type.rank : 1, deg, f.coords, f.signs};
            if (!h.type.is_classical()) {
                // orientation inside a GL factor is forced by the factor's own
                int rel = f.signs[0] * hsign[f.coords[0]];
                for (std::size_t j = 0; j < f.coords.size(); ++j)
                    if (f.signs[j] * hsign[f.coords[j]] != rel)
                        throw EmbeddingInvalid("block orientation incompatible with GL factor");
                for (auto& s : b.signs) s *= rel;
            }
            blocks.push_back(b);
        }
        if (blocks.empty() && !core && h.type.is_classical())
            throw EmbeddingInvalid("factor " + h.type.str() + " not covered");
        per.push_back(levis_in_factor(h, blocks, core));
    }
    return cartesian(g.ambient(), per);
}

}  // namespace wfl
