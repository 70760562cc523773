#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qtsp {

/// Rank of a tour in [0, (n-1)!), lexicographic in the suffix permutation.
using TourIndex = std::uint64_t;

/// A fixed-start Hamiltonian cycle: a permutation of {0,...,n-1} with
/// visits[0] == 0. The cycle closes with the edge back to city 0.
struct Tour {
    std::vector<int> visits;
};

/// A random asymmetric TSP instance: directed city-pair costs drawn uniformly
/// from [c1, c2]. Diagonal entries are unused and held at zero.
struct TspInstance {
    int n = 0;                     ///< city count (>= 3)
    double c1 = 0.0;               ///< lower cost bound (>= 0)
    double c2 = 0.0;               ///< upper cost bound (> c1)
    std::uint64_t seed = 0;        ///< generation seed
    std::vector<double> costs;     ///< n*n row-major; costs[j*n+k] is the cost j -> k

    [[nodiscard]] double cost(int j, int k) const { return costs[static_cast<std::size_t>(j) * n + k]; }
};

/// (n-1)! as an unsigned 64-bit count of tours.
[[nodiscard]] std::uint64_t tour_count(int n);

/// Draws each off-diagonal cost independently and uniformly from [c1, c2].
/// Deterministic: the same (n, c1, c2, seed) always yields the same matrix.
/// Throws std::invalid_argument for n < 3 or c2 <= c1 or c1 < 0.
[[nodiscard]] TspInstance generate_instance(int n, double c1, double c2, std::uint64_t seed);

/// Unranks a tour: index 0 is the identity order 0,1,...,n-1 and indices run
/// lexicographically over the (n-1)! suffix permutations (factorial number
/// system). Throws std::invalid_argument if idx >= (n-1)!.
[[nodiscard]] Tour tour_from_index(TourIndex idx, int n);

/// Ranks a tour; exact inverse of tour_from_index.
/// Throws std::invalid_argument if the tour is not a valid fixed-start permutation.
[[nodiscard]] TourIndex index_from_tour(const Tour& t);

/// Closed-cycle cost including the return edge to city 0.
[[nodiscard]] double tour_cost(const TspInstance& inst, const Tour& t);

/// Default budgets: full cost enumeration up to n = 11, statevectors up to
/// n = 10. Both are overridable at the call sites that enforce them.
inline constexpr int kDefaultEnumerationLimit = 11;
inline constexpr int kDefaultStatevectorLimit = 10;

/// Costs of all (n-1)! tours, entry k belonging to tour_from_index(k).
/// Throws resource_error when (n-1)! exceeds the enumeration budget.
[[nodiscard]] std::vector<double> enumerate_costs(const TspInstance& inst,
                                                  int max_n = kDefaultEnumerationLimit);

/// Exact mean tour cost from the pair-sum identity: every directed edge
/// appears in (n-2)! of the (n-1)! tours, so the mean is (1/(n-1)) * sum c_jk.
[[nodiscard]] double exact_mean_pairsum(const TspInstance& inst);

/// Exact mean of squared tour costs from the three-sum decomposition over
/// ordered edge pairs: same edge, head-to-tail adjacent edges, and
/// vertex-disjoint edges, weighted (n-2)!/(n-1)!, 2(n-3)!/(n-1)! and
/// (n-3)!/(n-1)! respectively. Throws std::invalid_argument for n < 4.
[[nodiscard]] double exact_second_moment_decomposition(const TspInstance& inst);

/// Dual-route check of the second moment: closed-form decomposition versus
/// brute-force enumeration. Both values and their relative deviation are
/// reported so a disagreement is surfaced instead of silently resolved.
struct SecondMomentCheck {
    double decomposition = 0.0;
    double enumeration = 0.0;
    double rel_deviation = 0.0;
    bool consistent = false; ///< rel_deviation <= tolerance
};
[[nodiscard]] SecondMomentCheck verify_second_moment(const TspInstance& inst,
                                                     double tolerance = 1e-10);

/// Serialization: header line "n c1 c2 seed", then n rows of n costs written
/// with 17 significant digits (diagonal written as 0, ignored on read).
void save_instance(const TspInstance& inst, std::ostream& out);
void save_instance_file(const TspInstance& inst, const std::string& path);
[[nodiscard]] TspInstance load_instance(std::istream& in);
[[nodiscard]] TspInstance load_instance_file(const std::string& path);

} // namespace qtsp
