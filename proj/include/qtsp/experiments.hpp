#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qtsp/quantum_sim.hpp"
#include "qtsp/report.hpp"

namespace qtsp {

/// Which oracle realization a run uses.
///   window — two-level oracle: phase 0 on the low-cost window, pi elsewhere
///            (the desk-scale realization; exact two-group dynamics).
///   affine — the continuous affine cost-to-phase map (optionally snapped to
///            group phases in discretized mode), the map the asymptotic
///            analysis assumes.
enum class OracleKind { window, affine };

/// Full description of one experiment; every output byte is a function of
/// these fields (wall-clock/memory figures are reported separately).
struct ExperimentConfig {
    std::string kind;                   ///< gen|stats|run-quantum|run-classical|compare|sweep
    int n = 8;
    double c1 = 0.0;
    double c2 = 1.0;
    std::uint64_t seed = 1;
    int M = 8;
    double quantile = 0.002;            ///< q: window captures the best ceil(q*N) tours
    double eta = 0.0;                   ///< >0 overrides the quantile-derived window
    std::uint64_t shots = 0;            ///< measurement samples (0 = skip sampling)
    std::uint64_t max_queries = 10000;  ///< classical per-trial cap
    int trials = 200;                   ///< classical trial count
    OracleMode mode = OracleMode::discretized;
    OracleKind oracle = OracleKind::window;
    std::string out_dir = "qtsp_out";
    std::vector<int> n_list;            ///< sweep cells (n axis)
    std::vector<std::uint64_t> seeds;   ///< sweep cells (seed axis)
    int workers = 0;                    ///< sweep worker threads (0 = hardware)
    int enumeration_limit = kDefaultEnumerationLimit;
    int statevector_limit = kDefaultStatevectorLimit;
};

/// Reads a JSON config file and merges it over the defaults above.
/// Unknown keys raise std::invalid_argument naming the key.
[[nodiscard]] ExperimentConfig load_config_file(const std::string& path);

/// Validates field ranges; throws std::invalid_argument naming the field.
void validate_config(const ExperimentConfig& cfg);

/// Commands. Each returns the full report (including timing.* keys) and
/// writes its outputs under cfg.out_dir: report.txt holds every deterministic
/// key, timing.txt the wall-clock/memory figures, plus the per-command CSVs.
[[nodiscard]] Report cmd_gen(const ExperimentConfig& cfg);
[[nodiscard]] Report cmd_stats(const ExperimentConfig& cfg);
[[nodiscard]] Report cmd_run_quantum(const ExperimentConfig& cfg);
[[nodiscard]] Report cmd_run_classical(const ExperimentConfig& cfg);
[[nodiscard]] Report cmd_compare(const ExperimentConfig& cfg);
[[nodiscard]] Report cmd_sweep(const ExperimentConfig& cfg);

/// Dispatches on cfg.kind.
[[nodiscard]] Report run_experiment(const ExperimentConfig& cfg);

} // namespace qtsp
