#pragma once

#include "wfl/descent.hpp"

#include <string>

namespace wfl {

struct ScenarioFormatError : DomainError {
    using DomainError::DomainError;
};

// Scenario files are JSON objects:
//   {"levi": {"sizes": [2, 1], "m": 1}, "s0": [1, 0], "q": 7,
//    "eps_gl": [["1/4", "3/4"], ["0/1"]], "eps_prime": ["0/1", "1/3", "2/3"],
//    "eps_dblprime": ["0/1"], "forms": {"prime_minus": "split", "dblprime_minus": "split"}}
// Eigenvalues are exponents "j/N" of exp(2 pi i j/N).  "forms" may be omitted.
DescentScenario scenario_from_json(const std::string& text);
std::string scenario_to_json(const DescentScenario& sc);

// Embedded groups:
//   {"ambient": 3, "factors": [{"kind": "GL", "rank": 1, "coords": [0], "signs": [1]},
//                              {"kind": "Sp", "rank": 2, "coords": [1, 2]}]}
// Optional per-factor keys: "degree" (default 1), "ramified", "form".
EmbeddedGroup group_from_json(const std::string& text);
std::string group_to_json(const EmbeddedGroup& g);

}  // namespace wfl
