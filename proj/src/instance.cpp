#include "qtsp/instance.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qtsp/errors.hpp"
#include "qtsp/rng.hpp"

namespace qtsp {

std::uint64_t tour_count(int n) {
    std::uint64_t f = 1;
    for (int k = 2; k < n; ++k) f *= static_cast<std::uint64_t>(k);
    return f;
}

TspInstance generate_instance(int n, double c1, double c2, std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("generate_instance: n must be >= 3");
    if (!(c2 > c1)) throw std::invalid_argument("generate_instance: require c2 > c1");
    if (c1 < 0.0) throw std::invalid_argument("generate_instance: require c1 >= 0");

    TspInstance inst;
    inst.n = n;
    inst.c1 = c1;
    inst.c2 = c2;
    inst.seed = seed;
    inst.costs.assign(static_cast<std::size_t>(n) * n, 0.0);

    // Row-major fill order over off-diagonal entries; one draw per entry.
    std::mt19937_64 rng(seed);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            if (j == k) continue;
            inst.costs[static_cast<std::size_t>(j) * n + k] = uniform_in(rng, c1, c2);
        }
    }
    return inst;
}

Tour tour_from_index(TourIndex idx, int n) {
    if (n < 3) throw std::invalid_argument("tour_from_index: n must be >= 3");
    const std::uint64_t count = tour_count(n);
    if (idx >= count) {
        throw std::invalid_argument("tour_from_index: index " + std::to_string(idx) +
                                    " out of range [0, " + std::to_string(count) + ")");
    }

    // Factorial-number-system digits of idx select from the remaining cities,
    // giving the lexicographic rank order over suffix permutations.
    std::vector<int> remaining(static_cast<std::size_t>(n) - 1);
    std::iota(remaining.begin(), remaining.end(), 1);

    Tour t;
    t.visits.reserve(static_cast<std::size_t>(n));
    t.visits.push_back(0);
    std::uint64_t radix = count; // (n-1)!
    for (int pos = 0; pos < n - 1; ++pos) {
        radix /= static_cast<std::uint64_t>(n - 1 - pos);
        const auto digit = static_cast<std::size_t>(idx / radix);
        idx %= radix;
        t.visits.push_back(remaining[digit]);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(digit));
    }
    return t;
}

TourIndex index_from_tour(const Tour& t) {
    const int n = static_cast<int>(t.visits.size());
    if (n < 3 || t.visits[0] != 0) {
        throw std::invalid_argument("index_from_tour: tour must start at city 0 and have n >= 3");
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int city : t.visits) {
        if (city < 0 || city >= n || seen[static_cast<std::size_t>(city)]) {
            throw std::invalid_argument("index_from_tour: visits is not a permutation of 0..n-1");
        }
        seen[static_cast<std::size_t>(city)] = true;
    }

    std::vector<int> remaining(static_cast<std::size_t>(n) - 1);
    std::iota(remaining.begin(), remaining.end(), 1);

    TourIndex idx = 0;
    std::uint64_t radix = tour_count(n);
    for (int pos = 1; pos < n; ++pos) {
        radix /= static_cast<std::uint64_t>(n - pos);
        const auto it = std::find(remaining.begin(), remaining.end(), t.visits[static_cast<std::size_t>(pos)]);
        idx += static_cast<std::uint64_t>(it - remaining.begin()) * radix;
        remaining.erase(it);
    }
    return idx;
}

double tour_cost(const TspInstance& inst, const Tour& t) {
    const int n = inst.n;
    double c = 0.0;
    for (int k = 0; k < n; ++k) {
        c += inst.cost(t.visits[static_cast<std::size_t>(k)],
                       t.visits[static_cast<std::size_t>((k + 1) % n)]);
    }
    return c;
}

std::vector<double> enumerate_costs(const TspInstance& inst, int max_n) {
    if (inst.n > max_n) {
        throw resource_error("enumerate_costs: n = " + std::to_string(inst.n) +
                             " exceeds the enumeration budget n <= " + std::to_string(max_n) +
                             " ((n-1)! cost entries)");
    }
    const std::uint64_t count = tour_count(inst.n);
    std::vector<double> out(count);

    // std::next_permutation over the suffix walks tours in exactly the
    // lexicographic order that TourIndex ranks.
    const int n = inst.n;
    std::vector<int> visits(static_cast<std::size_t>(n));
    std::iota(visits.begin(), visits.end(), 0);
    std::uint64_t k = 0;
    do {
        double c = 0.0;
        for (int i = 0; i < n; ++i) {
            c += inst.cost(visits[static_cast<std::size_t>(i)],
                           visits[static_cast<std::size_t>((i + 1) % n)]);
        }
        out[k++] = c;
    } while (std::next_permutation(visits.begin() + 1, visits.end()));
    return out;
}

double exact_mean_pairsum(const TspInstance& inst) {
    // Each directed edge appears (n-2)! times among (n-1)! tours.
    long double sum = 0.0L;
    const int n = inst.n;
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            if (j != k) sum += inst.cost(j, k);
        }
    }
    return static_cast<double>(sum / (n - 1));
}

double exact_second_moment_decomposition(const TspInstance& inst) {
    const int n = inst.n;
    if (n < 4) {
        throw std::invalid_argument("exact_second_moment_decomposition: n must be >= 4 "
                                    "(disjoint-edge sum needs 4 distinct cities)");
    }

    // Ordered pairs of directed edges (j->k, l->m), j != k, l != m, classified by
    // how many tours contain both:
    //   same edge (j,k)=(l,m)                -> weight (n-2)!/(n-1)!
    //   head-to-tail adjacent (k=l or m=j)   -> weight (n-3)!/(n-1)!, both
    //     orientations counted, hence the factor 2 on the one-sided sum
    //   all four cities distinct             -> weight (n-3)!/(n-1)!
    // Edge pairs sharing a city in any other way (k=m, j=l, or reversed edges)
    // never co-occur in a single tour and carry weight zero.
    long double same = 0.0L;
    long double adjacent = 0.0L; // sum over k=l only; factor 2 applied below
    long double total = 0.0L;
    long double row_sq = 0.0L;   // for the disjoint sum via inclusion-exclusion
    long double col_sq = 0.0L;
    long double rev = 0.0L;      // sum of c_jk * c_kj
    std::vector<long double> rowsum(static_cast<std::size_t>(n), 0.0L);
    std::vector<long double> colsum(static_cast<std::size_t>(n), 0.0L);

    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            if (j == k) continue;
            const long double c = inst.cost(j, k);
            same += c * c;
            total += c;
            rowsum[static_cast<std::size_t>(j)] += c;
            colsum[static_cast<std::size_t>(k)] += c;
            rev += c * inst.cost(k, j);
        }
    }
    for (int v = 0; v < n; ++v) {
        // Head-to-tail pairs (j->v, v->m), j != m: colsum_v*rowsum_v minus the
        // reversed-edge products (j->v, v->j).
        adjacent += colsum[static_cast<std::size_t>(v)] * rowsum[static_cast<std::size_t>(v)];
        row_sq += rowsum[static_cast<std::size_t>(v)] * rowsum[static_cast<std::size_t>(v)];
        col_sq += colsum[static_cast<std::size_t>(v)] * colsum[static_cast<std::size_t>(v)];
    }
    adjacent -= rev;

    // Disjoint pairs by inclusion-exclusion on total^2: remove same edge,
    // reversed edges, and every shared-vertex pattern.
    const long double shared_tail = row_sq - same;        // j=l, k != m
    const long double shared_head = col_sq - same;        // k=m, j != l
    // Ordered head-to-tail and tail-to-head pairs each sum to `adjacent`.
    const long double disjoint = total * total - same - rev - shared_tail - shared_head -
                                 2.0L * adjacent;

    const long double inv_n1 = 1.0L / (n - 1);            // (n-2)!/(n-1)!
    const long double inv_n1n2 = inv_n1 / (n - 2);        // (n-3)!/(n-1)!
    const long double second = same * inv_n1 + 2.0L * adjacent * inv_n1n2 + disjoint * inv_n1n2;
    return static_cast<double>(second);
}

SecondMomentCheck verify_second_moment(const TspInstance& inst, double tolerance) {
    SecondMomentCheck chk;
    chk.decomposition = exact_second_moment_decomposition(inst);
    const std::vector<double> costs = enumerate_costs(inst);
    long double acc = 0.0L;
    for (double c : costs) acc += static_cast<long double>(c) * c;
    chk.enumeration = static_cast<double>(acc / static_cast<long double>(costs.size()));
    chk.rel_deviation = std::abs(chk.decomposition - chk.enumeration) /
                        std::max(std::abs(chk.enumeration), 1e-300);
    chk.consistent = chk.rel_deviation <= tolerance;
    return chk;
}

namespace {

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

void save_instance(const TspInstance& inst, std::ostream& out) {
    out << inst.n << ' ' << format_real(inst.c1) << ' ' << format_real(inst.c2) << ' '
        << inst.seed << '\n';
    for (int j = 0; j < inst.n; ++j) {
        for (int k = 0; k < inst.n; ++k) {
            if (k > 0) out << ' ';
            out << format_real(j == k ? 0.0 : inst.cost(j, k));
        }
        out << '\n';
    }
}

void save_instance_file(const TspInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_instance_file: cannot open " + path);
    save_instance(inst, out);
}

TspInstance load_instance(std::istream& in) {
    TspInstance inst;
    if (!(in >> inst.n >> inst.c1 >> inst.c2 >> inst.seed)) {
        throw std::runtime_error("load_instance: malformed header line");
    }
    if (inst.n < 3) throw std::runtime_error("load_instance: n must be >= 3");
    inst.costs.assign(static_cast<std::size_t>(inst.n) * inst.n, 0.0);
    for (int j = 0; j < inst.n; ++j) {
        for (int k = 0; k < inst.n; ++k) {
            double c = 0.0;
            if (!(in >> c)) throw std::runtime_error("load_instance: truncated cost matrix");
            inst.costs[static_cast<std::size_t>(j) * inst.n + k] = (j == k) ? 0.0 : c;
        }
    }
    return inst;
}

TspInstance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_instance_file: cannot open " + path);
    return load_instance(in);
}

} // namespace qtsp
