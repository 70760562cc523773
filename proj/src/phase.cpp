#include "qtsp/phase.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace qtsp {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
} // namespace

double cost_to_phase(double c, int n, double c1, double c2) {
    if (!(c2 > c1)) throw std::invalid_argument("cost_to_phase: require c2 > c1");
    const double lo = n * c1;
    const double hi = n * c2;
    // Costs are sums of n values from [c1, c2]; allow a sliver of rounding slack
    // at the boundaries before rejecting.
    const double slack = 1e-9 * (hi - lo);
    if (c < lo - slack || c > hi + slack) {
        throw std::invalid_argument("cost_to_phase: cost outside [n*c1, n*c2]");
    }
    const double phi = kTwoPi * (c - lo) / (hi - lo);
    return std::clamp(phi, 0.0, kTwoPi);
}

PhaseMap build_phase_map(const TspInstance& inst, int max_n) {
    PhaseMap pm;
    pm.n = inst.n;
    pm.c1 = inst.c1;
    pm.c2 = inst.c2;
    const std::vector<double> costs = enumerate_costs(inst, max_n);
    pm.phases.resize(costs.size());
    for (std::size_t k = 0; k < costs.size(); ++k) {
        pm.phases[k] = cost_to_phase(costs[k], inst.n, inst.c1, inst.c2);
    }
    return pm;
}

int discretize_phase(double phi, int M) {
    if (M < 1) throw std::invalid_argument("discretize_phase: M must be >= 1");
    if (phi < 0.0 || phi > kTwoPi) {
        throw std::invalid_argument("discretize_phase: phase outside [0, 2*pi]");
    }
    // j = round(phi*M/pi) with half-bin ties to the even group index,
    // implemented explicitly so the result never depends on the FP rounding
    // environment.
    const double x = phi * static_cast<double>(M) / kPi;
    double j = std::floor(x);
    const double frac = x - j;
    if (frac > 0.5) {
        j += 1.0;
    } else if (frac == 0.5) {
        // Exact tie: pick the even neighbour.
        if (std::fmod(j, 2.0) != 0.0) j += 1.0;
    }
    auto group = static_cast<int>(j);
    return group % (2 * M);
}

GroupSpec build_group_spec(const PhaseMap& pm, int M, double eta) {
    if (M < 1) throw std::invalid_argument("build_group_spec: M must be >= 1");
    if (eta < 0.0 || eta > kPi / M) {
        throw std::invalid_argument("build_group_spec: require 0 <= eta <= pi/M "
                                    "(phase-0 window must fit in group 0)");
    }
    GroupSpec gs;
    gs.M = M;
    gs.eta = eta;
    gs.counts.assign(static_cast<std::size_t>(2 * M), 0);
    for (double phi : pm.phases) {
        ++gs.counts[static_cast<std::size_t>(discretize_phase(phi, M))];
    }
    const auto N = static_cast<double>(pm.phases.size());
    gs.fractions.resize(gs.counts.size());
    for (std::size_t j = 0; j < gs.counts.size(); ++j) {
        gs.fractions[j] = static_cast<double>(gs.counts[j]) / N;
    }
    return gs;
}

PhaseStats phase_stats(const PhaseMap& pm) {
    PhaseStats ps;
    const auto N = static_cast<long double>(pm.phases.size());
    long double sum = 0.0L;
    for (double phi : pm.phases) sum += phi;
    const long double mean = sum / N;
    long double var = 0.0L;
    for (double phi : pm.phases) {
        const long double d = phi - mean;
        var += d * d;
    }
    var /= N;
    ps.mean_phase = static_cast<double>(mean);
    ps.std_phase = static_cast<double>(std::sqrt(var));
    // Costs relate to phases by the exact affine map; invert it for the cost
    // statistics so both views stay consistent to the last bit of the map.
    const double scale = pm.n * (pm.c2 - pm.c1) / kTwoPi;
    ps.mean_cost = pm.n * pm.c1 + ps.mean_phase * scale;
    ps.std_cost = ps.std_phase * scale;
    return ps;
}

ConditionReport check_conditions(const GroupSpec& gs, const PhaseStats& ps, int n) {
    ConditionReport cr;
    std::complex<long double> overlap = 0.0L;
    for (std::size_t j = 0; j < gs.fractions.size(); ++j) {
        const long double phi = static_cast<long double>(j) * kPi / gs.M;
        overlap += static_cast<long double>(gs.fractions[j]) *
                   (1.0L + std::complex<long double>(std::cos(phi), std::sin(phi)));
    }
    cr.overlap_residual = static_cast<double>(std::abs(overlap));
    cr.leakage = gs.eta * gs.eta / 12.0;
    cr.eta_over_dphi = ps.std_phase > 0.0 ? gs.eta / ps.std_phase : 0.0;
    cr.sqrt_n = std::sqrt(static_cast<double>(n));
    cr.overlap_ok = cr.overlap_residual < kOverlapThreshold;
    cr.leakage_ok = cr.leakage < kLeakageThreshold;
    cr.window_ok = cr.eta_over_dphi >= kWindowLowerRatio && cr.eta_over_dphi <= cr.sqrt_n / 3.0;
    return cr;
}

double eta_for_quantile(const PhaseMap& pm, double q) {
    if (!(q > 0.0) || q > 1.0) {
        throw std::invalid_argument("eta_for_quantile: require 0 < q <= 1");
    }
    const auto N = pm.phases.size();
    auto k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(N)));
    k = std::max<std::size_t>(k, 1);
    k = std::min(k, N);
    std::vector<double> sorted(pm.phases);
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k - 1),
                     sorted.end());
    return 2.0 * sorted[k - 1];
}

std::vector<TourIndex> window_indices(const PhaseMap& pm, double eta, bool include_wrap) {
    if (eta < 0.0) throw std::invalid_argument("window_indices: eta must be >= 0");
    std::vector<TourIndex> out;
    const double half = eta / 2.0;
    for (std::size_t k = 0; k < pm.phases.size(); ++k) {
        const double phi = pm.phases[k];
        if (phi <= half || (include_wrap && phi >= kTwoPi - half)) {
            out.push_back(static_cast<TourIndex>(k));
        }
    }
    return out;
}

PhaseMap two_level_map(const PhaseMap& pm, double eta) {
    PhaseMap out;
    out.n = pm.n;
    out.c1 = pm.c1;
    out.c2 = pm.c2;
    out.phases.resize(pm.phases.size());
    const double half = eta / 2.0;
    for (std::size_t k = 0; k < pm.phases.size(); ++k) {
        out.phases[k] = (pm.phases[k] <= half) ? 0.0 : kPi;
    }
    return out;
}

void write_group_spec_csv(const GroupSpec& gs, std::ostream& out) {
    out << "j,phi_j,N_j,f_j\n";
    char buf[128];
    for (std::size_t j = 0; j < gs.counts.size(); ++j) {
        const double phi = static_cast<double>(j) * kPi / gs.M;
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%llu,%.17g\n", j, phi,
                      static_cast<unsigned long long>(gs.counts[j]), gs.fractions[j]);
        out << buf;
    }
}

} // namespace qtsp
