#pragma once

#include "wfl/descent.hpp"

#include <functional>
#include <string>
#include <vector>

namespace wfl {

struct CorpusSpec {
    int min_n = 1;
    int max_n = 5;
    std::vector<long long> orders{1, 2, 3, 4, 5, 8};
    std::vector<long long> qs{3, 5, 7};
};

// Every scenario under (B) for the given bounds.  Blocks of equal size are
// filled in non-decreasing order, which removes permutations of I.
std::vector<DescentScenario> descent_corpus(const CorpusSpec& spec);

struct ScenarioResult {
    std::size_t index = 0;
    DescentReport report;
    std::string error;  // domain error raised while evaluating, if any
    bool ok() const { return error.empty() && report.ok(); }
};

// Runs verify_descent over the corpus with `jobs` workers; results come back
// in corpus order whatever the schedule.
std::vector<ScenarioResult> run_descent_campaign(const std::vector<DescentScenario>& corpus, int jobs,
                                                 const DescentHooks& hooks = {});

}  // namespace wfl
