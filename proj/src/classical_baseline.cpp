#include "qtsp/classical_baseline.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "qtsp/rng.hpp"

namespace qtsp {

QueryLog random_search(const TspInstance& inst, const std::vector<TourIndex>& target,
                       std::uint64_t max_queries, std::uint64_t seed) {
    if (target.empty()) throw std::invalid_argument("random_search: target must be nonempty");
    if (max_queries < 1) throw std::invalid_argument("random_search: max_queries must be >= 1");

    const std::uint64_t N = tour_count(inst.n);
    // Byte mask instead of a sorted copy: membership lookups are O(1) and the
    // setup cost is one pass over the target, which keeps large-target trial
    // batches linear instead of sort-dominated.
    std::vector<std::uint8_t> is_target(N, 0);
    for (const TourIndex t : target) {
        if (t >= N) throw std::invalid_argument("random_search: target index out of range");
        is_target[t] = 1;
    }

    std::mt19937_64 rng(seed);
    QueryLog log;
    log.best_cost = std::numeric_limits<double>::infinity();

    while (log.queries < max_queries) {
        const TourIndex idx = uniform_index(rng, N);
        const double cost = tour_cost(inst, tour_from_index(idx, inst.n));
        ++log.queries;
        if (cost < log.best_cost) {
            log.best_cost = cost;
            log.best_tour = idx;
        }
        if (is_target[idx]) {
            log.found = true;
            break;
        }
    }
    return log;
}

QueryLog best_of_k(const TspInstance& inst, std::uint64_t k, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("best_of_k: k must be >= 1");
    const std::uint64_t N = tour_count(inst.n);
    std::mt19937_64 rng(seed);
    QueryLog log;
    log.best_cost = std::numeric_limits<double>::infinity();
    for (std::uint64_t q = 0; q < k; ++q) {
        const TourIndex idx = uniform_index(rng, N);
        const double cost = tour_cost(inst, tour_from_index(idx, inst.n));
        ++log.queries;
        if (cost < log.best_cost) {
            log.best_cost = cost;
            log.best_tour = idx;
        }
    }
    log.found = true;
    return log;
}

void write_trials_csv(const std::vector<std::pair<std::uint64_t, QueryLog>>& trials,
                      std::ostream& out) {
    out << "seed,queries,found,best_cost\n";
    char buf[128];
    for (const auto& [seed, log] : trials) {
        std::snprintf(buf, sizeof buf, "%llu,%llu,%d,%.17g\n",
                      static_cast<unsigned long long>(seed),
                      static_cast<unsigned long long>(log.queries), log.found ? 1 : 0,
                      log.best_cost);
        out << buf;
    }
}

} // namespace qtsp
