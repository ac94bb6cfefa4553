#pragma once

#include <optional>
#include <string>
#include <vector>

#include "circdd/circulant.hpp"

namespace circdd {

struct SearchConfig {
    int degree = 10;
    int diameter = 2;
    int64_t n_min = 0;          // 0: degree + 1
    int64_t n_max = 0;          // 0: M_AC(degree, diameter)
    bool fix_one = true;        // primitive sets, completed by the sets made only of non-units
    bool girth_prune = false;   // reject prefixes with an odd closed walk shorter than 2k+1
    int pair_diff = 0;          // > 0: require two generators differing by at most this much
    int jobs = 1;
    double time_budget_s = 0;   // 0: unlimited
    std::string checkpoint;     // resume from / save to this file when set
    uint64_t checkpoint_every = 256;  // work units between checkpoint writes
};

struct WitnessClass {
    GeneratingSet representative;  // lexicographically least member
    std::vector<GeneratingSet> members;
};

struct SearchFrontier {
    int64_t n = 0;
    uint64_t unit = 0;  // first work unit at order n not yet completed
};

struct SearchResult {
    int64_t best_order = 0;
    std::vector<GeneratingSet> witnesses;
    std::vector<WitnessClass> classes;
    bool exhaustive = false;      // complete enumeration with no heuristic filter
    bool heuristic_filters = false;
    bool budget_exceeded = false;
    SearchFrontier frontier;      // where a resumed run continues
    uint64_t candidates = 0;      // generating sets whose diameter was tested
    int64_t lowest_scanned = 0;   // smallest order fully scanned
};

// Scans n from n_max down; at the first n with a witness, collects every witness there.
SearchResult exhaustive_extremal(const SearchConfig& cfg);

// True iff no order in (claimed_n, n_max] admits diameter <= k. Throws BudgetExceeded when
// the budget runs out (the checkpoint, if configured, is saved first).
bool confirm_extremality(int degree, int k, int64_t claimed_n, SearchConfig cfg = {});

// Partition by multiplier isomorphism.
std::vector<WitnessClass> classify_witnesses(int64_t n, std::vector<GeneratingSet> witnesses);

// Work units at order n; exposed for tests.
struct WorkUnit {
    int64_t g1 = 0;
    int64_t g2 = 0;              // 0 when the set has a single generator
    bool non_units_only = false;  // every generator must share a factor with n
};
std::vector<WorkUnit> work_units(const SearchConfig& cfg, int64_t n);

}  // namespace circdd
