#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qtsp/instance.hpp"
#include "qtsp/phase.hpp"

namespace qtsp {

/// Complex amplitudes over all N tours, indexed by TourIndex.
struct StateVector {
    std::vector<std::complex<double>> amps;

    [[nodiscard]] std::size_t size() const { return amps.size(); }
};

/// Oracle mode: apply the continuous phases as given, or snap each phase to
/// its nearest nominal group phase j*pi/M first.
enum class OracleMode { continuous, discretized };

/// Configuration of one amplitude-amplification run.
struct GroverConfig {
    OracleMode mode = OracleMode::discretized;
    int M = 1;                        ///< half-group count (discretized mode)
    std::uint64_t R = 0;              ///< total applications of G
    double predicted_error = 0.0;     ///< O(sqrt(f0)) error estimate, informational
    std::vector<TourIndex> target;    ///< solution set for success reporting
    bool clamped = false;             ///< true when the iteration formula rounded to 0
};

/// One row of the per-step trace: probabilities after `step` applications.
struct TraceRow {
    std::uint64_t step = 0;
    std::uint64_t query_count = 0;
    double p_group0 = 0.0;   ///< probability of the phase-0 set (window incl. wrap side)
    double p_target = 0.0;   ///< probability of the configured target set
    double norm_drift = 0.0; ///< | ||amps|| - 1 |
};

/// Result of run(): final state plus the recorded trace and query accounting.
struct RunResult {
    StateVector state;
    std::vector<TraceRow> trace;       ///< rows for step = 0..R
    std::uint64_t queries = 0;         ///< oracle applications, exactly
    std::uint64_t renormalizations = 0;
    double max_renorm_correction = 0.0;
};

/// Uniform superposition |psi0>, every amplitude 1/sqrt(N).
/// Throws resource_error when N exceeds the statevector budget
/// (max_N = 0 selects the default, (kDefaultStatevectorLimit-1)! entries).
[[nodiscard]] StateVector init_uniform(std::uint64_t N, std::uint64_t max_N = 0);

/// Diagonal oracle: amps[k] *= exp(i*phi_k), with phi_k continuous or snapped
/// to the nominal group phase depending on mode.
void apply_cost_oracle(StateVector& sv, const PhaseMap& pm, OracleMode mode, int M);

/// One generalized Grover step G = -(1 - 2|psi0><psi0|) C. Counts as ONE
/// oracle query. The inversion is about the fixed uniform state |psi0>.
void apply_grover(StateVector& sv, const PhaseMap& pm, OracleMode mode, int M);

/// Query count R for a target population f0. Continuous mode:
/// R = max(1, round((pi/2 - sqrt(f0)) / (2 sqrt(f0)))). Discretized mode
/// returns the nearest multiple of 2M, at least 2M. When the inner count
/// rounds to zero it is clamped to 1 and *clamped is set.
[[nodiscard]] std::uint64_t iteration_count(double f0, int M, OracleMode mode,
                                            bool* clamped = nullptr);

/// Applies R Grover steps, tracing probabilities after every step and
/// renormalizing every 100 steps (corrections are logged, never hidden).
[[nodiscard]] RunResult run(const StateVector& sv0, const PhaseMap& pm, const GroverConfig& cfg);

/// Sum of |amps[k]|^2 over the target set.
[[nodiscard]] double success_probability(const StateVector& sv, const std::vector<TourIndex>& target);

/// i.i.d. samples from |amps|^2; deterministic for a fixed seed.
[[nodiscard]] std::vector<TourIndex> measure(const StateVector& sv, std::uint64_t shots,
                                             std::uint64_t seed);

/// What a measured tour turned out to be, given the window width eta:
/// a genuine low-cost solution, a high-cost impostor from the wrap side of the
/// phase-0 set, or neither. Decided by classical cost lookup.
enum class MeasuredClass { low_cost_solution, high_cost_impostor, non_solution };
[[nodiscard]] MeasuredClass classify_measured(const TspInstance& inst, TourIndex t, double eta);

/// CSV with columns "step, query_count, p_group0, p_target, norm_drift".
void write_trace_csv(const std::vector<TraceRow>& trace, std::ostream& out);

} // namespace qtsp
