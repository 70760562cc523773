#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qtsp/instance.hpp"

namespace qtsp {

/// One phase per TourIndex, in [0, 2*pi]. Built from an instance via the
/// affine cost-to-phase map, or synthetically (e.g. a two-level oracle).
struct PhaseMap {
    std::vector<double> phases;
    int n = 0;
    double c1 = 0.0;
    double c2 = 0.0;
};

/// Discretization of a PhaseMap into 2M cost-phase groups with nominal phases
/// phi_j = j*pi/M, plus the half-window width eta used for continuous-mode
/// solution marking.
struct GroupSpec {
    int M = 1;
    std::vector<std::uint64_t> counts;  ///< N_j, length 2M
    std::vector<double> fractions;      ///< f_j = N_j/N, length 2M
    double eta = 0.0;                   ///< window width (radians)
};

/// Empirical phase/cost statistics over all tours of one instance.
struct PhaseStats {
    double mean_phase = 0.0;
    double std_phase = 0.0;
    double mean_cost = 0.0;
    double std_cost = 0.0;
};

/// Validity diagnostics: the uniform-state overlap residual |<psi0|(C+1)|psi0>|,
/// the first-order leakage eta^2/12, and the window-vs-spread ratio eta/dphi.
/// Thresholds below are artifact choices and travel with every report.
struct ConditionReport {
    double overlap_residual = 0.0;
    double leakage = 0.0;
    double eta_over_dphi = 0.0;
    double sqrt_n = 0.0;
    bool overlap_ok = false;       ///< overlap_residual < 0.1
    bool leakage_ok = false;       ///< leakage < 0.01
    bool window_ok = false;        ///< 3 <= eta/dphi <= sqrt(n)/3
};

inline constexpr double kOverlapThreshold = 0.1;
inline constexpr double kLeakageThreshold = 0.01;
inline constexpr double kWindowLowerRatio = 3.0;

/// Affine map phi = 2*pi*(c - n*c1)/(n*(c2 - c1)): 0 at the global cost lower
/// bound n*c1, pi at the midpoint cost n*(c1+c2)/2, 2*pi at n*c2.
/// Throws std::invalid_argument when c lies outside [n*c1, n*c2].
[[nodiscard]] double cost_to_phase(double c, int n, double c1, double c2);

/// Phases of all tours of an instance under the affine map, indexed by TourIndex.
[[nodiscard]] PhaseMap build_phase_map(const TspInstance& inst,
                                       int max_n = kDefaultEnumerationLimit);

/// Nearest nominal group: j = round(phi*M/pi) mod 2M. Exact half-bin ties
/// round to the even group index so results do not depend on FP rounding mode.
[[nodiscard]] int discretize_phase(double phi, int M);

/// Histogram of discretized phases plus the recorded window width.
/// Requires eta <= pi/M so the phase-0 window is contained in group 0.
[[nodiscard]] GroupSpec build_group_spec(const PhaseMap& pm, int M, double eta);

/// Empirical mean/std of phases and costs over all tours.
[[nodiscard]] PhaseStats phase_stats(const PhaseMap& pm);

/// Evaluates the validity conditions from a group spec and phase statistics.
[[nodiscard]] ConditionReport check_conditions(const GroupSpec& gs, const PhaseStats& ps, int n);

/// Picks eta so the window [0, eta/2] captures the best ceil(q*N) tours:
/// eta = 2 * (k-th smallest phase). Ties may enlarge the captured set.
[[nodiscard]] double eta_for_quantile(const PhaseMap& pm, double q);

/// Tour indices with phase <= eta/2 (the low-cost window); when include_wrap
/// is true, also those with phase >= 2*pi - eta/2 (the high-cost wrap side of
/// the phase-0 set). Sorted ascending.
[[nodiscard]] std::vector<TourIndex> window_indices(const PhaseMap& pm, double eta,
                                                    bool include_wrap = false);

/// Two-level oracle realization for desk-scale runs: tours in the low-cost
/// window get phase 0, every other tour gets phase pi. The resulting dynamics
/// is the exact two-group amplitude amplification with f = |window|/N.
[[nodiscard]] PhaseMap two_level_map(const PhaseMap& pm, double eta);

/// CSV with columns "j, phi_j, N_j, f_j" (one row per group).
void write_group_spec_csv(const GroupSpec& gs, std::ostream& out);

} // namespace qtsp
