#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "qtsp/instance.hpp"

namespace qtsp {

/// Outcome of one classical random-query trial.
struct QueryLog {
    std::uint64_t queries = 0;
    double best_cost = 0.0;
    TourIndex best_tour = 0;
    bool found = false;
};

/// Uniformly random tour queries WITH replacement until a target tour is hit
/// or max_queries is reached; each sampled tour costs exactly one query.
/// Deterministic per seed. Throws std::invalid_argument for an empty target.
[[nodiscard]] QueryLog random_search(const TspInstance& inst, const std::vector<TourIndex>& target,
                                     std::uint64_t max_queries, std::uint64_t seed);

/// Queries exactly k random tours (with replacement) and keeps the cheapest.
[[nodiscard]] QueryLog best_of_k(const TspInstance& inst, std::uint64_t k, std::uint64_t seed);

/// CSV with columns "seed, queries, found, best_cost" (one row per trial).
void write_trials_csv(const std::vector<std::pair<std::uint64_t, QueryLog>>& trials,
                      std::ostream& out);

} // namespace qtsp
