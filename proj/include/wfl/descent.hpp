#pragma once

#include "wfl/endoscopy.hpp"
#include "wfl/nonstandard.hpp"

#include <string>
#include <vector>

namespace wfl {

struct ScenarioInvalid : DomainError {
    explicit ScenarioInvalid(std::vector<std::string> v);
    std::vector<std::string> violations;
};

// Form classes of the -1 eigenspaces V'_- and V''_- of eps' and eps''.
struct FormTags {
    FormClass prime_minus = FormClass::split;
    FormClass dblprime_minus = FormClass::split;
    auto operator<=>(const FormTags&) const = default;
};

// eps in M^! of finite order.  q stands in for the Frobenius: it acts on
// eigenvalues by x -> x^q.
struct DescentScenario {
    LeviDatum levi;
    EllipticDatumMeta s0;
    long long q = 3;
    std::vector<Multiset<RootOfUnity>> eps_gl;  // one per block, n_i eigenvalues
    Multiset<RootOfUnity> eps_prime;            // 2m'+1 eigenvalues
    Multiset<RootOfUnity> eps_dblprime;         // 2m''+1 eigenvalues
    FormTags forms;

    int n() const { return levi.n(); }
};

struct ScenarioCheck {
    std::vector<std::string> violations;
    bool hyp_a = false;  // M^!_eps quasi-split
    bool hyp_b = false;  // additionally everything unramified
    bool ok() const { return violations.empty(); }
};

ScenarioCheck validate_scenario(const DescentScenario& sc);

// eta_i = eps_i on the blocks; the symplectic part is correspond_mu(eps', eps'').
struct EtaData {
    std::vector<Multiset<RootOfUnity>> gl;
    Multiset<RootOfUnity> sp;
};
EtaData eta_from_epsilon(const DescentScenario& sc);

// Frobenius orbit of x, sorted by exponent.
std::vector<RootOfUnity> frobenius_orbit(const RootOfUnity& x, long long q);

enum class CentralizerKind { symplectic, odd_orthogonal, gl };
// Centralizer of a semisimple element given by its full eigenvalue multiset
// in Sp(2k), SO(2k+1) or GL(k).  minus_form is the class of the -1
// eigenspace in the orthogonal case.
GroupType centralizer_type(const Multiset<RootOfUnity>& eigenvalues, long long q, CentralizerKind kind,
                           FormClass minus_form = FormClass::split);

// One coordinate of the common dual torus.  Blocks come first, then the m'
// coordinates of eps', then the m'' of eps''.  eta is the eigenvalue of eta
// on e_c (its inverse sits on -e_c).
struct DescentCoord {
    int block = -1;    // index in I, -1 on the metaplectic part
    int part = 0;      // 0 block, 1 from eps', 2 from eps''
    RootOfUnity eta;
};

struct DescentOutcome {
    DescentScenario scenario;
    std::vector<DescentCoord> coords;
    EmbeddedGroup M;         // prod GL(n_i) x Sp(2m)
    EmbeddedGroup M_eta;
    EmbeddedGroup G_eta;
    EmbeddedGroup Mexc;      // M^!_eps
    EmbeddedGroup Mexc_bar;
    EmbeddedGroup R;
    // GL factors of R that do not come from the blocks of I, as coordinate lists.
    std::vector<std::vector<int>> absorbed;
    ArthurElement sbar0;
};

struct DescentHooks {
    bool corrupt_sbar0 = false;  // flips s0-bar on coordinate 0
};

DescentOutcome descend(const DescentScenario& sc, const DescentHooks& hooks = {});

// Sign on every coordinate: -1 on the blocks with t_i = -1.
std::vector<int> tau(const DescentOutcome& o, const std::vector<int>& t);
ArthurElement sbar_of_t(const DescentOutcome& o, const std::vector<int>& t);

// G[s] at eps[s], built from the z[s]-twisted eigenvalues, with the sign of
// s-bar read off from the role of each factor.
struct StableDescent {
    SElement s;
    GofS gs;
    EmbeddedGroup Gs_eps;
    std::vector<int> sbar;
};
StableDescent stable_descent(const DescentOutcome& o, const std::vector<int>& t);

bool compatibility_check(const DescentOutcome& o, const std::vector<int>& t);
// G_eta[s-bar] against the bar of G[s]_{eps[s]}.
bool pushforward_check(const DescentOutcome& o, const std::vector<int>& t);

// SO(2) split written as GL(1).
EmbeddedGroup normalize_torus_so2(const EmbeddedGroup& g);
// Sp(2a) -> SO(2a+1) on the same coordinates.
EmbeddedGroup unbar(const EmbeddedGroup& g);

// (L[s-bar], L^eps)
std::pair<EmbeddedGroup, EmbeddedGroup> pushforward_levi(const DescentOutcome& o, const std::vector<int>& t,
                                                         const EmbeddedGroup& L);
// The Levi of G_eta containing R with the same a-space as L^eps.
EmbeddedGroup section_levi(const DescentOutcome& o, const EmbeddedGroup& Leps);

struct ENaturalEntry {
    std::vector<int> t;
    SElement s;
    EmbeddedGroup L;
    ArthurElement sbar;
    EmbeddedGroup L_sbar;
    EmbeddedGroup L_eps;
    DSquared d_inst;      // d^G_R(M, L), squared
    DSquared d_st;        // d^{G[s]}_{M^!_eps}(M^!, L^eps), squared
    Rational c_inst;      // c^inst / d
    Rational c_st;        // c^st / d
    Rational c_nonstandard;
};

std::vector<ENaturalEntry> enumerate_E_natural(const DescentOutcome& o);

struct CheckRecord {
    std::string id;
    bool ok = true;
    std::string witness;
};

struct DescentReport {
    std::size_t e_natural = 0;
    std::size_t e_st = 0;
    std::size_t e_inst = 0;
    std::vector<CheckRecord> checks;
    bool ok() const;
};

// Every descent identity on one scenario.
DescentReport verify_descent(const DescentScenario& sc, const DescentHooks& hooks = {});

// "j/N" with N > 0, including "0/1".
std::string root_str(const RootOfUnity& x);
std::string scenario_str(const DescentScenario& sc);

}  // namespace wfl
