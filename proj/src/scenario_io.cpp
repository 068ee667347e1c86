#include "wfl/scenario_io.hpp"

#include "json.hpp"

namespace wfl {

using nlohmann::json;

namespace {

Multiset<RootOfUnity> roots(const json& j, const std::string& what) {
    if (!j.is_array()) throw ScenarioFormatError(what + " must be an array of \"j/N\" strings");
    Multiset<RootOfUnity> m;
    for (const auto& x : j) {
        if (!x.is_string()) throw ScenarioFormatError(what + " entries must be strings");
        try {
            m.push_back(RootOfUnity::parse(x.get<std::string>()));
        } catch (const DomainError& e) {
            throw ScenarioFormatError(what + ": " + e.what());
        }
    }
    return m;
}

json roots_json(const Multiset<RootOfUnity>& m) {
    json a = json::array();
    for (const auto& x : m) a.push_back(root_str(x));
    return a;
}

}  // namespace

DescentScenario scenario_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ScenarioFormatError(std::string("malformed JSON: ") + e.what());
    }
    try {
        DescentScenario sc;
        sc.levi.sizes = j.at("levi").at("sizes").get<std::vector<int>>();
        sc.levi.m = j.at("levi").at("m").get<int>();
        auto s0 = j.at("s0").get<std::vector<int>>();
        if (s0.size() != 2) throw ScenarioFormatError("s0 must be [m', m'']");
        sc.s0 = {s0[0], s0[1]};
        sc.q = j.at("q").get<long long>();
        for (const auto& b : j.at("eps_gl")) sc.eps_gl.push_back(roots(b, "eps_gl"));
        sc.eps_prime = roots(j.at("eps_prime"), "eps_prime");
        sc.eps_dblprime = roots(j.at("eps_dblprime"), "eps_dblprime");
        if (j.contains("forms")) {
            const auto& f = j.at("forms");
            if (f.contains("prime_minus")) sc.forms.prime_minus = parse_form_class(f.at("prime_minus").get<std::string>());
            if (f.contains("dblprime_minus")) sc.forms.dblprime_minus = parse_form_class(f.at("dblprime_minus").get<std::string>());
        }
        return sc;
    } catch (const json::exception& e) {
        throw ScenarioFormatError(std::string("bad scenario field: ") + e.what());
    }
}

std::string scenario_to_json(const DescentScenario& sc) {
    json j;
    j["levi"] = {{"sizes", sc.levi.sizes}, {"m", sc.levi.m}};
    j["s0"] = {sc.s0.m_prime, sc.s0.m_dblprime};
    j["q"] = sc.q;
    json gl = json::array();
    for (const auto& b : sc.eps_gl) gl.push_back(roots_json(b));
    j["eps_gl"] = gl;
    j["eps_prime"] = roots_json(sc.eps_prime);
    j["eps_dblprime"] = roots_json(sc.eps_dblprime);
    j["forms"] = {{"prime_minus", to_string(sc.forms.prime_minus)}, {"dblprime_minus", to_string(sc.forms.dblprime_minus)}};
    return j.dump();
}

}  // namespace wfl

namespace wfl {

namespace {

Kind parse_kind(const std::string& s) {
    if (s == "GL") return Kind::GL;
    if (s == "U") return Kind::U;
    if (s == "Sp") return Kind::Sp;
    if (s == "SOodd") return Kind::SOodd;
    if (s == "SOeven") return Kind::SOeven;
    throw ScenarioFormatError("unknown factor kind '" + s + "'");
}

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::GL: return "GL";
        case Kind::U: return "U";
        case Kind::Sp: return "Sp";
        case Kind::SOodd: return "SOodd";
        case Kind::SOeven: return "SOeven";
    }
    return "?";
}

}  // namespace

EmbeddedGroup group_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ScenarioFormatError(std::string("malformed JSON: ") + e.what());
    }
    try {
        std::vector<EmbeddedFactor> fs;
        for (const auto& f : j.at("factors")) {
            EmbeddedFactor ef;
            ef.type.kind = parse_kind(f.at("kind").get<std::string>());
            ef.type.rank = f.at("rank").get<int>();
            ef.type.degree = f.value("degree", 1);
            ef.type.ramified = f.value("ramified", false);
            if (f.contains("form")) ef.type.form = parse_form_class(f.at("form").get<std::string>());
            ef.coords = f.at("coords").get<std::vector<int>>();
            if (f.contains("signs")) ef.signs = f.at("signs").get<std::vector<int>>();
            else if (ef.type.kind == Kind::GL) ef.signs.assign(ef.coords.size(), 1);
            fs.push_back(std::move(ef));
        }
        return EmbeddedGroup(j.at("ambient").get<int>(), std::move(fs));
    } catch (const json::exception& e) {
        throw ScenarioFormatError(std::string("bad group field: ") + e.what());
    }
}

std::string group_to_json(const EmbeddedGroup& g) {
    json fs = json::array();
    for (const auto& f : g.factors()) {
        json x = {{"kind", kind_name(f.type.kind)}, {"rank", f.type.rank}, {"coords", f.coords}};
        if (f.type.degree != 1) x["degree"] = f.type.degree;
        if (f.type.ramified) x["ramified"] = true;
        if (f.type.kind == Kind::SOeven) x["form"] = to_string(f.type.form);
        if (!f.signs.empty()) x["signs"] = f.signs;
        fs.push_back(std::move(x));
    }
    return json{{"ambient", g.ambient()}, {"factors", fs}}.dump();
}

}  // namespace wfl
