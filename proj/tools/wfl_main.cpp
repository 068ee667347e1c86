// wfl command-line front end.
//
// Exit codes: 0 pass, 1 identity failure, 2 usage, 3 domain error.

#include "wfl/campaign.hpp"
#include "wfl/descent.hpp"
#include "wfl/qspaces.hpp"
#include "wfl/scenario_io.hpp"
#include "wfl/suites.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using nlohmann::json;
using namespace wfl;

namespace {

constexpr int kPass = 0;
constexpr int kIdentityFailure = 1;
constexpr int kUsage = 2;
constexpr int kDomain = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::string out;
    std::string format = "text";
    int jobs = 1;
    std::uint64_t seed = 20240601;
};

struct Table {
    std::vector<std::string> cols;
    std::vector<std::vector<std::string>> rows;

    std::string render(const std::string& format) const {
        std::ostringstream os;
        if (format == "json") {
            json a = json::array();
            for (const auto& r : rows) {
                json o = json::object();
                for (std::size_t i = 0; i < cols.size(); ++i) o[cols[i]] = r[i];
                a.push_back(o);
            }
            os << a.dump(2) << "\n";
        } else if (format == "csv") {
            auto cell = [](const std::string& s) {
                if (s.find_first_of(",\"") == std::string::npos) return s;
                std::string q = "\"";
                for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
                return q + "\"";
            };
            for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cell(cols[i]);
            os << "\n";
            for (const auto& r : rows) {
                for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << cell(r[i]);
                os << "\n";
            }
        } else {
            std::vector<std::size_t> w(cols.size());
            for (std::size_t i = 0; i < cols.size(); ++i) w[i] = cols[i].size();
            for (const auto& r : rows)
                for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
            auto line = [&](const std::vector<std::string>& r) {
                for (std::size_t i = 0; i < r.size(); ++i) {
                    os << r[i];
                    if (i + 1 < r.size()) os << std::string(w[i] - r[i].size() + 2, ' ');
                }
                os << "\n";
            };
            line(cols);
            for (const auto& r : rows) line(r);
        }
        return os.str();
    }
};

// --out wins; verify falls back to $WFL_OUT_DIR; everything else prints.
void emit(const Globals& g, const std::string& body, const std::string& default_name = {}) {
    std::string path = g.out;
    if (path.empty() && !default_name.empty())
        if (const char* dir = std::getenv("WFL_OUT_DIR"); dir && *dir) path = std::string(dir) + "/" + default_name;
    if (path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path);
    f << body;
    if (!default_name.empty()) std::cerr << "report written to " << path << "\n";
}

std::string join(const std::vector<int>& v, const char* sep = ",") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

std::string signs_str(const std::vector<int>& v) {
    std::string s;
    for (int x : v) s += x > 0 ? '+' : '-';
    return s.empty() ? "()" : s;
}

LeviDatum levi_from(std::vector<int> sizes, int m) {
    for (int x : sizes)
        if (x < 1) throw UsageError("block sizes must be positive");
    if (m < 0) throw UsageError("--m must be >= 0");
    std::sort(sizes.rbegin(), sizes.rend());
    return {sizes, m};
}

EllipticDatumMeta s0_from(const std::vector<int>& s0, int m) {
    if (s0.empty()) return {m, 0};
    if (s0.size() != 2 || s0[0] < 0 || s0[1] < 0 || s0[0] + s0[1] != m)
        throw UsageError("--s0 must be m',m'' with m' + m'' = m");
    return {s0[0], s0[1]};
}

std::vector<int> signs_from(const std::vector<int>& v, std::size_t k) {
    if (v.empty()) return std::vector<int>(k, 1);
    if (v.size() != k) throw UsageError("expected " + std::to_string(k) + " signs");
    for (int x : v)
        if (x != 1 && x != -1) throw UsageError("signs must be 1 or -1");
    return v;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// Either inline JSON or @file.
std::string json_arg(const std::string& v) { return !v.empty() && v[0] == '@' ? slurp(v.substr(1)) : v; }

QMat vectors_from(const std::string& s, int dim) {
    QMat out;
    std::stringstream rows(s);
    std::string row;
    while (std::getline(rows, row, ';')) {
        if (row.empty()) continue;
        QVec v;
        std::stringstream cells(row);
        std::string c;
        while (std::getline(cells, c, ',')) v.push_back(parse_rational(c));
        if (static_cast<int>(v.size()) != dim) throw UsageError("vector '" + row + "' does not have " + std::to_string(dim) + " entries");
        out.push_back(v);
    }
    return out;
}

// d itself, exact when d^2 is a square of a rational.
std::string sqrt_str(const Rational& x) {
    BigInt n = numerator(x), d = denominator(x);
    BigInt rn = boost::multiprecision::sqrt(n), rd = boost::multiprecision::sqrt(d);
    if (rn * rn == n && rd * rd == d) return to_string(Rational(rn, rd));
    return "sqrt(" + to_string(x) + ")";
}

template <class T, class Parse>
Multiset<T> multiset_from(const std::vector<std::string>& xs, Parse parse) {
    Multiset<T> m;
    for (const auto& x : xs) m.push_back(parse(x));
    return m;
}

// ---------------------------------------------------------------------------

int cmd_levi(const Globals& g, int n) {
    if (n < 0) throw UsageError("--n must be >= 0");
    Table t{{"sizes", "m", "group", "weyl_order"}, {}};
    for (const auto& d : levi_data(n))
        t.rows.push_back({"[" + join(d.sizes) + "]", std::to_string(d.m), levi_group_type(d).str(), weyl_relative_order(d).str()});
    emit(g, t.render(g.format));
    return kPass;
}

int cmd_endo(const Globals& g, int m) {
    if (m < 0) throw UsageError("--m must be >= 0");
    Table t{{"m_prime", "m_dblprime", "group"}, {}};
    for (const auto& d : elliptic_data_meta(m))
        t.rows.push_back({std::to_string(d.m_prime), std::to_string(d.m_dblprime), endoscopic_group_meta({{}, m}, d).str()});
    emit(g, t.render(g.format));
    return kPass;
}

int cmd_eset(const Globals& g, const LeviDatum& levi, const EllipticDatumMeta& s0) {
    Table t{{"signs", "n_prime", "n_dblprime", "G_s", "M_endo", "i_meta"}, {}};
    for (const auto& s : e_set(levi, s0)) {
        GofS gs = g_of_s(levi, s);
        t.rows.push_back({signs_str(s.signs), std::to_string(gs.n_prime), std::to_string(gs.n_dblprime), gs.group.str(),
                          gs.m_endo.type().str(), to_string(i_meta(levi, s))});
    }
    emit(g, t.render(g.format));
    return kPass;
}

int cmd_correspond(const Globals& g, const std::vector<std::string>& prime, const std::vector<std::string>& dblprime, bool lie) {
    std::string out;
    if (lie) {
        auto p = multiset_from<Rational>(prime, parse_rational);
        auto d = multiset_from<Rational>(dblprime, parse_rational);
        out = multiset_str(correspond_lie(p, d));
    } else {
        auto p = multiset_from<RootOfUnity>(prime, RootOfUnity::parse);
        auto d = multiset_from<RootOfUnity>(dblprime, RootOfUnity::parse);
        Multiset<RootOfUnity> r = correspond_mu(p, d);
        out = "{";
        for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + root_str(r[i]);
        out += "}";
    }
    Table t{{"kind", "result"}, {{lie ? "lie" : "group", out}}};
    emit(g, t.render(g.format));
    return kPass;
}

struct CoeffArgs {
    std::string kind;
    std::vector<int> sizes;
    int m = 0;
    int I = -1;
    std::vector<int> s0;
    std::vector<int> signs;
    std::string R, L;
    std::vector<std::string> forms;
    int dim = 0;
    std::string aM, aL, aR;
};

int cmd_coeff(const Globals& g, CoeffArgs a) {
    Table t{{"kind", "value"}, {}};
    if (a.I >= 0) {
        a.sizes.assign(a.I, 1);
        a.m = 0;
    }
    if (a.kind == "i-meta") {
        LeviDatum levi = levi_from(a.sizes, a.m);
        SElement s{s0_from(a.s0, levi.m), signs_from(a.signs, levi.sizes.size())};
        t.rows.push_back({a.kind, to_string(i_meta(levi, s))});
    } else if (a.kind == "c-nonstandard") {
        LeviDatum levi = levi_from(a.sizes, a.m);
        Rational raw = c_nonstandard_raw(build_triple(std::max(levi.n(), 1)), levi);
        t.cols.push_back("closed_form");
        t.rows.push_back({a.kind, to_string(raw), to_string(c_nonstandard_closed(static_cast<int>(levi.sizes.size()), levi.m))});
    } else if (a.kind == "i-standard") {
        if (a.R.empty() || a.L.empty()) throw UsageError("i-standard needs --R and --L");
        EmbeddedGroup R = group_from_json(json_arg(a.R)), L = group_from_json(json_arg(a.L));
        if (R.ambient() != L.ambient()) throw UsageError("--R and --L have different ambient rank");
        ArthurElement s{signs_from(a.signs, R.ambient()), std::vector<FormClass>(R.ambient(), FormClass::split)};
        if (!a.forms.empty()) {
            if (a.forms.size() != s.s.size()) throw UsageError("--forms needs one class per coordinate");
            for (std::size_t i = 0; i < a.forms.size(); ++i) s.even_form[i] = parse_form_class(a.forms[i]);
        }
        t.rows.push_back({a.kind, to_string(i_standard(R, L, s))});
    } else if (a.kind == "d") {
        if (a.dim < 1) throw UsageError("d needs --dim");
        QSubspace M(a.dim, vectors_from(a.aM, a.dim)), L(a.dim, vectors_from(a.aL, a.dim)), R(a.dim, vectors_from(a.aR, a.dim));
        DSquared d = d_coefficient(M, L, R, QForm::euclidean(a.dim));
        t.cols.push_back("d_squared");
        t.rows.push_back({a.kind, sqrt_str(d.value), to_string(d.value)});
    } else {
        throw UsageError("unknown coefficient kind '" + a.kind + "'");
    }
    emit(g, t.render(g.format));
    return kPass;
}

json checks_json(const std::vector<CheckRecord>& cs) {
    json a = json::array();
    for (const auto& c : cs) a.push_back({{"check", c.id}, {"status", c.ok ? "pass" : "fail"}, {"witness", c.witness}});
    return a;
}

int cmd_descend(const Globals& g, const std::string& file, bool corrupt) {
    if (file.empty()) throw UsageError("descend needs --scenario");
    DescentScenario sc = scenario_from_json(slurp(file));
    ScenarioCheck chk = validate_scenario(sc);
    if (!chk.ok()) throw ScenarioInvalid(chk.violations);
    DescentHooks hooks{corrupt};
    DescentOutcome o = descend(sc, hooks);
    DescentReport rep = verify_descent(sc, hooks);
    // with a corrupted s0-bar the enumeration itself can break down; the checks already say why
    std::vector<ENaturalEntry> entries;
    std::string entries_error;
    try {
        entries = enumerate_E_natural(o);
    } catch (const DomainError& e) {
        entries_error = e.what();
    }

    std::string body;
    if (g.format == "json") {
        json j;
        j["scenario"] = json::parse(scenario_to_json(sc));
        j["digest"] = scenario_digest(sc);
        j["hypothesis_a"] = chk.hyp_a;
        j["hypothesis_b"] = chk.hyp_b;
        j["M_eta"] = o.M_eta.str();
        j["G_eta"] = o.G_eta.str();
        j["M_exc"] = o.Mexc.str();
        j["R"] = o.R.str();
        j["sbar0"] = signs_str(o.sbar0.s);
        json es = json::array();
        for (const auto& e : entries)
            es.push_back({{"t", signs_str(e.t)}, {"L", e.L.str()}, {"L_eps", e.L_eps.str()}, {"d_inst_squared", to_string(e.d_inst.value)},
                          {"d_st_squared", to_string(e.d_st.value)}, {"c_inst", to_string(e.c_inst)}, {"c_st", to_string(e.c_st)},
                          {"c_nonstandard", to_string(e.c_nonstandard)}});
        j["e_natural"] = es;
        if (!entries_error.empty()) j["e_natural_error"] = entries_error;
        j["checks"] = checks_json(rep.checks);
        j["status"] = rep.ok() ? "pass" : "fail";
        body = j.dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << "scenario " << scenario_str(sc) << "  [" << scenario_digest(sc) << "]\n";
        os << "hypotheses A=" << chk.hyp_a << " B=" << chk.hyp_b << "\n";
        os << "M_eta  " << o.M_eta.str() << "\nG_eta  " << o.G_eta.str() << "\nM_exc  " << o.Mexc.str() << "\nR      " << o.R.str()
           << "\nsbar0  " << signs_str(o.sbar0.s) << "\n\n";
        Table t{{"t", "L", "L_eps", "d_inst^2", "d_st^2", "c_inst", "c_st", "c_nonstandard"}, {}};
        for (const auto& e : entries)
            t.rows.push_back({signs_str(e.t), e.L.str(), e.L_eps.str(), to_string(e.d_inst.value), to_string(e.d_st.value),
                              to_string(e.c_inst), to_string(e.c_st), to_string(e.c_nonstandard)});
        os << t.render(g.format == "csv" ? "csv" : "text");
        if (!entries_error.empty()) os << "E-natural not enumerable: " << entries_error << "\n";
        os << "\n";
        Table c{{"check", "status", "witness"}, {}};
        for (const auto& r : rep.checks) c.rows.push_back({r.id, r.ok ? "pass" : "FAIL", r.witness});
        os << c.render(g.format == "csv" ? "csv" : "text");
        body = os.str();
    }
    emit(g, body);
    return rep.ok() ? kPass : kIdentityFailure;
}

struct VerifyArgs {
    int max_n = 4;
    std::vector<long long> orders{1, 2, 3, 4, 5, 8};
    std::vector<long long> qs{3, 5, 7};
    std::vector<std::string> suites{"counts", "nonstandard", "torsion", "product", "descent"};
    int per_shape = 1000;
    bool corrupt_sbar0 = false;
};

int cmd_verify(const Globals& g, const VerifyArgs& a) {
    if (a.max_n < 0 || a.max_n > 6) throw UsageError("--max-n must be in 0..6");
    CorpusSpec spec;
    spec.max_n = a.max_n;
    spec.orders = a.orders;
    spec.qs = a.qs;

    std::vector<SuiteResult> results;
    for (const auto& s : a.suites) {
        if (s == "counts") results.push_back(suite_counts());
        else if (s == "nonstandard") results.push_back(suite_nonstandard());
        else if (s == "torsion") results.push_back(suite_torsion(g.seed, a.per_shape));
        else if (s == "product") results.push_back(suite_product());
        else if (s == "descent") results.push_back(suite_descent(spec, g.jobs, DescentHooks{a.corrupt_sbar0}));
        else throw UsageError("unknown suite '" + s + "'");
    }

    bool ok = std::all_of(results.begin(), results.end(), [](const SuiteResult& r) { return r.ok(); });
    std::string body;
    if (g.format == "json") {
        json rep;
        rep["campaign"] = {{"max_n", a.max_n}, {"orders", a.orders}, {"qs", a.qs}, {"seed", g.seed}, {"per_shape", a.per_shape},
                           {"fault_injection", a.corrupt_sbar0}};
        // complexity grows roughly 10x per unit of max_n; max_n 5 is a few minutes on one core
        rep["complexity_note"] = "descent corpus size grows about tenfold per step of max_n";
        json suites = json::array(), timing = json::object();
        for (const auto& r : results) {
            json tallies = json::array();
            for (const auto& t : r.tallies) tallies.push_back({{"check", t.check}, {"passed", t.passed}, {"failed", t.failed}});
            json fails = json::array();
            for (const auto& f : r.failures)
                fails.push_back({{"check", f.check}, {"tag", r.name + "/" + f.check}, {"subject", f.subject}, {"status", "fail"}, {"witness", f.witness}});
            suites.push_back({{"suite", r.name}, {"status", r.ok() ? "pass" : "fail"}, {"checks", tallies}, {"failures", fails}, {"note", r.note}});
            timing[r.name] = r.seconds;  // outside the deterministic body
        }
        rep["suites"] = suites;
        rep["status"] = ok ? "pass" : "fail";
        body = json{{"report", rep}, {"timing_seconds", timing}}.dump(2) + "\n";
    } else {
        Table t{{"suite", "status", "checks", "failed", "note"}, {}};
        for (const auto& r : results)
            t.rows.push_back({r.name, r.ok() ? "pass" : "FAIL", std::to_string(r.total()), std::to_string(r.failed()), r.note});
        body = t.render(g.format);
        for (const auto& r : results)
            for (const auto& f : r.failures) body += r.name + "/" + f.check + " " + f.subject + ": " + f.witness + "\n";
    }
    emit(g, body, g.format == "json" ? "verify_report.json" : "verify_report." + g.format);
    return ok ? kPass : kIdentityFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact combinatorics of metaplectic endoscopy"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--out", g.out, "Write output to this file");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--jobs", g.jobs, "Worker threads for campaigns")->check(CLI::Range(1, 256));
    app.add_option("--seed", g.seed, "Seed for randomized multisets");

    int levi_n = 0;
    auto* levi = app.add_subcommand("levi", "Levi subgroups of Sp(2n) up to conjugacy");
    levi->add_option("--n", levi_n)->required();

    int endo_m = 0;
    auto* endo = app.add_subcommand("endo", "Elliptic endoscopic data of Mp(2m)");
    endo->add_option("--m", endo_m)->required();

    std::vector<int> sizes, s0, signs;
    int m = 0, I = -1;
    auto* eset = app.add_subcommand("eset", "The set E(M) for a Levi and s0");
    eset->add_option("--sizes", sizes, "GL block sizes")->delimiter(',');
    eset->add_option("--m", m, "Rank of the symplectic part");
    eset->add_option("--s0", s0, "m',m''")->delimiter(',');
    eset->add_option("--I", I, "Shorthand: k blocks of size 1 and m = 0");

    std::vector<std::string> prime, dblprime;
    bool lie = false;
    auto* corr = app.add_subcommand("correspond", "Eigenvalue correspondence SO(2m'+1) x SO(2m''+1) -> Sp(2m)");
    corr->add_option("--prime", prime, "Eigenvalues j/N (or rationals with --lie)")->delimiter(',')->required();
    corr->add_option("--dblprime", dblprime)->delimiter(',')->required();
    corr->add_flag("--lie", lie, "Additive version on the Lie algebra");

    CoeffArgs ca;
    auto* coeff = app.add_subcommand("coeff", "Exact coefficients");
    coeff->add_option("kind", ca.kind)->required()->check(CLI::IsMember({"i-meta", "i-standard", "c-nonstandard", "d"}));
    coeff->add_option("--sizes", ca.sizes)->delimiter(',');
    coeff->add_option("--m", ca.m);
    coeff->add_option("--I", ca.I);
    coeff->add_option("--s0", ca.s0)->delimiter(',');
    coeff->add_option("--signs", ca.signs, "One sign per block (i-meta) or per coordinate (i-standard)")->delimiter(',');
    coeff->add_option("--R", ca.R, "Embedded group as JSON or @file");
    coeff->add_option("--L", ca.L, "Embedded group as JSON or @file");
    coeff->add_option("--forms", ca.forms, "Form class per coordinate")->delimiter(',');
    coeff->add_option("--dim", ca.dim);
    coeff->add_option("--aM", ca.aM, "Spanning vectors 'a,b;c,d'");
    coeff->add_option("--aL", ca.aL);
    coeff->add_option("--aR", ca.aR);

    std::string scenario;
    bool corrupt = false;
    auto* desc = app.add_subcommand("descend", "Run the descent on one scenario file");
    desc->add_option("--scenario", scenario)->required();
    desc->add_flag("--corrupt-sbar0", corrupt, "Fault injection: flip s0-bar on coordinate 0");

    VerifyArgs va;
    auto* ver = app.add_subcommand("verify", "Verification campaign");
    ver->add_option("--max-n", va.max_n, "Largest n in the descent corpus");
    ver->add_option("--orders", va.orders, "Eigenvalue orders")->delimiter(',');
    ver->add_option("--qs", va.qs, "Residue field sizes")->delimiter(',');
    ver->add_option("--suite", va.suites, "counts,nonstandard,torsion,product,descent")->delimiter(',');
    ver->add_option("--per-shape", va.per_shape, "Random trials per (|I|, m) shape");
    ver->add_flag("--corrupt-sbar0", va.corrupt_sbar0, "Fault injection: flip s0-bar on coordinate 0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*levi) return cmd_levi(g, levi_n);
        if (*endo) return cmd_endo(g, endo_m);
        if (*eset) {
            if (I >= 0) return cmd_eset(g, levi_from(std::vector<int>(I, 1), 0), {0, 0});
            LeviDatum d = levi_from(sizes, m);
            return cmd_eset(g, d, s0_from(s0, d.m));
        }
        if (*corr) return cmd_correspond(g, prime, dblprime, lie);
        if (*coeff) return cmd_coeff(g, ca);
        if (*desc) return cmd_descend(g, scenario, corrupt);
        if (*ver) return cmd_verify(g, va);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ScenarioInvalid& e) {
        std::cerr << "invalid scenario:\n";
        for (const auto& v : e.violations) std::cerr << "  " << v << "\n";
        return kDomain;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kDomain;
    }
    return kUsage;
}
