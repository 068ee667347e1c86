#pragma once

#include "wfl/campaign.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace wfl {

struct Failure {
    std::string check;
    std::string subject;  // scenario digest or description of the input
    std::string witness;
};

// Aggregated outcome of one check id inside a suite.
struct CheckTally {
    std::string check;
    std::size_t passed = 0;
    std::size_t failed = 0;
};

struct SuiteResult {
    std::string name;
    std::vector<CheckTally> tallies;
    std::vector<Failure> failures;  // first few per check
    std::string note;
    double seconds = 0;

    std::size_t total() const;
    std::size_t failed() const;
    bool ok() const { return failed() == 0; }
    void record(const std::string& check, bool ok, const std::string& subject = {}, const std::string& witness = {});
};

// |elliptic_data_meta(m)| = m + 1 and |E(M)| = 2^|I|.
SuiteResult suite_counts(int max_m = 8, int max_n = 6);
// Raw coroot-lattice coefficient against 1 / (1/2 when m = 0).
SuiteResult suite_nonstandard(int max_n = 6);
// correspond_mu1_check on random rational classes, per (|I|, m) shape.
SuiteResult suite_torsion(std::uint64_t seed, int per_shape = 1000, int max_blocks = 3, int max_m = 4);
// arthur_product_check on (group, Levi) pairs from the catalog.
SuiteResult suite_product(int max_rank = 6);
// verify_descent over the corpus.
SuiteResult suite_descent(const CorpusSpec& spec, int jobs, const DescentHooks& hooks = {});

// 16 hex digits identifying a scenario.
std::string scenario_digest(const DescentScenario& sc);

// Group types used by suite_product: single factors and pairs of factors of
// total width <= max_rank.
std::vector<GroupType> catalog_groups(int max_rank);

}  // namespace wfl
