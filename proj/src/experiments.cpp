#include "qtsp/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "qtsp/classical_baseline.hpp"
#include "qtsp/errors.hpp"
#include "qtsp/group_sim.hpp"
#include "qtsp/theory.hpp"

namespace qtsp {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kPi = std::numbers::pi;

[[nodiscard]] std::uint64_t trial_seed(std::uint64_t base, int t) {
    // Golden-ratio mixing keeps trial streams distinct from the instance seed.
    return base ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(t + 1));
}

void ensure_out_dir(const ExperimentConfig& cfg) {
    fs::create_directories(cfg.out_dir);
}

[[nodiscard]] std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
    return (fs::path(cfg.out_dir) / name).string();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << content;
}

/// report.txt gets every deterministic key; volatile timing.* keys go to
/// timing.txt so the main report is byte-identical across repeated runs.
void write_report_files(const Report& report, const ExperimentConfig& cfg,
                        const std::string& stem = "report") {
    std::ostringstream deterministic;
    std::ostringstream timing;
    for (const auto& [k, v] : report.entries()) {
        (k.rfind("timing.", 0) == 0 ? timing : deterministic) << k << '=' << v << '\n';
    }
    write_text_file(out_path(cfg, stem + ".txt"), deterministic.str());
    if (!timing.str().empty()) {
        write_text_file(out_path(cfg, stem + "_timing.txt"), timing.str());
    }
}

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    [[nodiscard]] double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void add_config_echo(Report& rep, const ExperimentConfig& cfg) {
    rep.add("config.kind", cfg.kind);
    rep.add_int("config.n", cfg.n);
    rep.add("config.c1", cfg.c1);
    rep.add("config.c2", cfg.c2);
    rep.add_uint("config.seed", cfg.seed);
    rep.add_int("config.M", cfg.M);
    rep.add("config.quantile", cfg.quantile);
    rep.add("config.eta", cfg.eta);
    rep.add_uint("config.shots", cfg.shots);
    rep.add_uint("config.max_queries", cfg.max_queries);
    rep.add_int("config.trials", cfg.trials);
    rep.add("config.mode", cfg.mode == OracleMode::continuous ? "continuous" : "discretized");
    rep.add("config.oracle", cfg.oracle == OracleKind::window ? "window" : "affine");
    rep.add("config.out", cfg.out_dir);
}

void add_timing(Report& rep, const Stopwatch& sw) {
    rep.add("timing.wall_ms", sw.elapsed_ms());
    rep.add_uint("timing.peak_rss_kb", peak_rss_kb());
}

void add_condition_block(Report& rep, const std::string& prefix, const ConditionReport& cr) {
    rep.add(prefix + ".overlap_residual", cr.overlap_residual);
    rep.add(prefix + ".leakage", cr.leakage);
    rep.add(prefix + ".eta_over_dphi", cr.eta_over_dphi);
    rep.add(prefix + ".sqrt_n", cr.sqrt_n);
    rep.add(prefix + ".overlap_ok", cr.overlap_ok);
    rep.add(prefix + ".leakage_ok", cr.leakage_ok);
    rep.add(prefix + ".window_ok", cr.window_ok);
}

/// Everything the quantum/classical commands share: the instance, its affine
/// phase map and statistics, the resolved window, and both oracle views.
struct Pipeline {
    TspInstance inst;
    PhaseMap affine;
    PhaseStats stats;
    double eta = 0.0;                  ///< resolved window width
    std::vector<TourIndex> window;     ///< low-cost window (the solution set)
    double f_window = 0.0;             ///< |window|/N
    GroupSpec affine_groups;           ///< histogram of the affine map at cfg.M
    ConditionReport affine_conditions;
};

[[nodiscard]] Pipeline make_pipeline(const ExperimentConfig& cfg) {
    Pipeline p;
    p.inst = generate_instance(cfg.n, cfg.c1, cfg.c2, cfg.seed);
    p.affine = build_phase_map(p.inst, cfg.enumeration_limit);
    p.stats = phase_stats(p.affine);
    p.eta = cfg.eta > 0.0 ? cfg.eta : eta_for_quantile(p.affine, cfg.quantile);
    p.window = window_indices(p.affine, p.eta, /*include_wrap=*/false);
    p.f_window = static_cast<double>(p.window.size()) / static_cast<double>(p.affine.phases.size());
    p.affine_groups = build_group_spec(p.affine, cfg.M, 0.0);
    p.affine_groups.eta = p.eta; // window diagnostics ride along with the histogram
    p.affine_conditions = check_conditions(p.affine_groups, p.stats, cfg.n);
    return p;
}

void add_instance_block(Report& rep, const Pipeline& p) {
    rep.add_int("instance.n", p.inst.n);
    rep.add_uint("instance.N", tour_count(p.inst.n));
    rep.add("instance.c1", p.inst.c1);
    rep.add("instance.c2", p.inst.c2);
    rep.add_uint("instance.seed", p.inst.seed);
    rep.add("phase.mean_phase", p.stats.mean_phase);
    rep.add("phase.std_phase", p.stats.std_phase);
    rep.add("phase.mean_cost", p.stats.mean_cost);
    rep.add("phase.std_cost", p.stats.std_cost);
    rep.add("window.eta", p.eta);
    rep.add_uint("window.size", p.window.size());
    rep.add("window.fraction", p.f_window);
}

void write_groups_csv_file(const GroupSpec& gs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    write_group_spec_csv(gs, out);
}

/// Oracle phase map + the population f0 the iteration count is based on.
struct OracleView {
    PhaseMap pm;
    double f0 = 0.0;
    std::vector<TourIndex> amplified; ///< the set the dynamics amplifies
};

[[nodiscard]] OracleView make_oracle_view(const ExperimentConfig& cfg, const Pipeline& p) {
    OracleView view;
    if (cfg.oracle == OracleKind::window) {
        view.pm = two_level_map(p.affine, p.eta);
        view.f0 = p.f_window;
        view.amplified = p.window;
        if (view.f0 <= 0.0) {
            throw std::invalid_argument("oracle window is empty (quantile too small for N)");
        }
        return view;
    }
    view.pm = p.affine;
    if (cfg.mode == OracleMode::discretized) {
        view.f0 = p.affine_groups.fractions[0];
        for (std::size_t k = 0; k < p.affine.phases.size(); ++k) {
            if (discretize_phase(p.affine.phases[k], cfg.M) == 0) {
                view.amplified.push_back(static_cast<TourIndex>(k));
            }
        }
    } else {
        view.amplified = window_indices(p.affine, p.eta, /*include_wrap=*/true);
        view.f0 = static_cast<double>(view.amplified.size()) /
                  static_cast<double>(p.affine.phases.size());
    }
    if (view.f0 <= 0.0) {
        throw std::invalid_argument(
            "affine oracle: the phase-0 group is empty at this scale; use the window "
            "oracle or a larger quantile");
    }
    return view;
}

struct QuantumOutcome {
    std::uint64_t R = 0;
    bool clamped = false;
    double success = 0.0;   ///< probability of the low-cost window
    double p_group0 = 0.0;  ///< probability of the amplified set
    RunResult result;
};

[[nodiscard]] QuantumOutcome run_quantum_part(const ExperimentConfig& cfg, const Pipeline& p,
                                              const OracleView& view) {
    QuantumOutcome out;
    out.R = iteration_count(view.f0, cfg.M, cfg.mode, &out.clamped);
    GroverConfig gcfg;
    gcfg.mode = cfg.mode;
    gcfg.M = cfg.M;
    gcfg.R = out.R;
    gcfg.predicted_error = std::sqrt(view.f0);
    gcfg.target = p.window;
    const StateVector sv0 = init_uniform(view.pm.phases.size(),
                                         tour_count(cfg.statevector_limit));
    out.result = run(sv0, view.pm, gcfg);
    out.success = success_probability(out.result.state, p.window);
    out.p_group0 = success_probability(out.result.state, view.amplified);
    return out;
}

void add_quantum_block(Report& rep, const ExperimentConfig& cfg, const OracleView& view,
                       const QuantumOutcome& q) {
    rep.add("quantum.f0", view.f0);
    rep.add_uint("quantum.R", q.R);
    rep.add("quantum.clamped", q.clamped);
    rep.add_uint("quantum.queries", q.result.queries);
    rep.add("quantum.success", q.success);
    rep.add("quantum.p_group0_final", q.p_group0);
    rep.add_uint("quantum.renormalizations", q.result.renormalizations);
    rep.add("quantum.max_renorm_correction", q.result.max_renorm_correction);
    const SpeedupReport sp = speedup_report(view.f0, cfg.M, cfg.mode);
    rep.add("theory.classical_queries", sp.classical_queries);
    rep.add_uint("theory.quantum_queries", sp.quantum_queries);
    rep.add("theory.ratio", sp.ratio);
}

struct ClassicalOutcome {
    std::vector<std::pair<std::uint64_t, QueryLog>> trials;
    double mean_queries = 0.0;
    double found_rate = 0.0;
    double best_cost = 0.0;
};

[[nodiscard]] ClassicalOutcome run_classical_part(const ExperimentConfig& cfg, const Pipeline& p) {
    ClassicalOutcome out;
    out.trials.reserve(static_cast<std::size_t>(cfg.trials));
    long double query_sum = 0.0L;
    int found = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int t = 0; t < cfg.trials; ++t) {
        const std::uint64_t s = trial_seed(cfg.seed, t);
        QueryLog log = random_search(p.inst, p.window, cfg.max_queries, s);
        query_sum += log.queries;
        found += log.found ? 1 : 0;
        best = std::min(best, log.best_cost);
        out.trials.emplace_back(s, log);
    }
    out.mean_queries = static_cast<double>(query_sum / cfg.trials);
    out.found_rate = static_cast<double>(found) / cfg.trials;
    out.best_cost = best;
    return out;
}

void add_classical_block(Report& rep, const ClassicalOutcome& c) {
    rep.add_int("classical.trials", static_cast<std::int64_t>(c.trials.size()));
    rep.add("classical.mean_queries", c.mean_queries);
    rep.add("classical.found_rate", c.found_rate);
    rep.add("classical.best_cost", c.best_cost);
}

/// Conditions evaluated for the oracle actually driving the run: for the
/// two-level window oracle the histogram is exactly two groups (M = 1).
[[nodiscard]] ConditionReport oracle_conditions(const ExperimentConfig& cfg, const Pipeline& p,
                                                const OracleView& view) {
    if (cfg.oracle == OracleKind::window) {
        GroupSpec gs = build_group_spec(view.pm, 1, 0.0);
        gs.eta = p.eta;
        return check_conditions(gs, p.stats, cfg.n);
    }
    return p.affine_conditions;
}

} // namespace

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open file " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& err) {
        throw std::invalid_argument(std::string("config: JSON parse error: ") + err.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("config: top level must be an object");

    static const std::vector<std::string> known = {
        "kind",    "n",       "c1",     "c2",      "seed",   "M",
        "quantile", "eta",    "shots",  "max_queries", "trials", "mode",
        "oracle",  "out",     "n_list", "seeds",   "workers",
        "enumeration_limit", "statevector_limit"};

    ExperimentConfig cfg;
    for (const auto& [key, value] : doc.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
        try {
            if (key == "kind") cfg.kind = value.get<std::string>();
            else if (key == "n") cfg.n = value.get<int>();
            else if (key == "c1") cfg.c1 = value.get<double>();
            else if (key == "c2") cfg.c2 = value.get<double>();
            else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
            else if (key == "M") cfg.M = value.get<int>();
            else if (key == "quantile") cfg.quantile = value.get<double>();
            else if (key == "eta") cfg.eta = value.get<double>();
            else if (key == "shots") cfg.shots = value.get<std::uint64_t>();
            else if (key == "max_queries") cfg.max_queries = value.get<std::uint64_t>();
            else if (key == "trials") cfg.trials = value.get<int>();
            else if (key == "mode") {
                const auto mode = value.get<std::string>();
                if (mode == "continuous") cfg.mode = OracleMode::continuous;
                else if (mode == "discretized") cfg.mode = OracleMode::discretized;
                else throw std::invalid_argument("config: mode must be continuous|discretized");
            } else if (key == "oracle") {
                const auto oracle = value.get<std::string>();
                if (oracle == "window") cfg.oracle = OracleKind::window;
                else if (oracle == "affine") cfg.oracle = OracleKind::affine;
                else throw std::invalid_argument("config: oracle must be window|affine");
            } else if (key == "out") cfg.out_dir = value.get<std::string>();
            else if (key == "n_list") cfg.n_list = value.get<std::vector<int>>();
            else if (key == "seeds") cfg.seeds = value.get<std::vector<std::uint64_t>>();
            else if (key == "workers") cfg.workers = value.get<int>();
            else if (key == "enumeration_limit") cfg.enumeration_limit = value.get<int>();
            else if (key == "statevector_limit") cfg.statevector_limit = value.get<int>();
        } catch (const json::type_error& err) {
            throw std::invalid_argument("config: bad value for '" + key + "': " + err.what());
        }
    }
    return cfg;
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.n < 3) throw std::invalid_argument("config: n must be >= 3");
    if (!(cfg.c2 > cfg.c1)) throw std::invalid_argument("config: require c2 > c1");
    if (cfg.c1 < 0.0) throw std::invalid_argument("config: require c1 >= 0");
    if (cfg.M < 1) throw std::invalid_argument("config: M must be >= 1");
    if (!(cfg.quantile > 0.0) || cfg.quantile > 1.0) {
        throw std::invalid_argument("config: quantile must be in (0, 1]");
    }
    if (cfg.eta < 0.0 || cfg.eta > 2.0 * kPi) {
        throw std::invalid_argument("config: eta must be in [0, 2*pi]");
    }
    if (cfg.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (cfg.max_queries < 1) throw std::invalid_argument("config: max_queries must be >= 1");
    if (cfg.workers < 0) throw std::invalid_argument("config: workers must be >= 0");
    if (cfg.kind == "sweep") {
        if (cfg.n_list.empty()) throw std::invalid_argument("config: sweep needs a nonempty n_list");
        for (int n : cfg.n_list) {
            if (n < 3) throw std::invalid_argument("config: n_list entries must be >= 3");
        }
        if (cfg.seeds.empty()) throw std::invalid_argument("config: sweep needs a nonempty seeds list");
    }
}

Report cmd_gen(const ExperimentConfig& cfg) {
    const Stopwatch sw;
    validate_config(cfg);
    ensure_out_dir(cfg);
    const TspInstance inst = generate_instance(cfg.n, cfg.c1, cfg.c2, cfg.seed);
    const std::string path = out_path(cfg, "instance.txt");
    save_instance_file(inst, path);

    Report rep;
    add_config_echo(rep, cfg);
    rep.add_int("instance.n", inst.n);
    rep.add_uint("instance.N", tour_count(inst.n));
    rep.add("files.instance", path);
    add_timing(rep, sw);
    write_report_files(rep, cfg);
    return rep;
}

Report cmd_stats(const ExperimentConfig& cfg) {
    const Stopwatch sw;
    validate_config(cfg);
    ensure_out_dir(cfg);
    const Pipeline p = make_pipeline(cfg);

    Report rep;
    add_config_echo(rep, cfg);
    add_instance_block(rep, p);

    const std::vector<double> costs = enumerate_costs(p.inst, cfg.enumeration_limit);
    const auto [min_it, max_it] = std::minmax_element(costs.begin(), costs.end());
    rep.add("instance.min_cost", *min_it);
    rep.add("instance.max_cost", *max_it);

    long double mean_acc = 0.0L;
    for (double c : costs) mean_acc += c;
    const double enum_mean = static_cast<double>(mean_acc / costs.size());
    const double pairsum = exact_mean_pairsum(p.inst);
    rep.add("stats.mean_pairsum", pairsum);
    rep.add("stats.mean_enumerated", enum_mean);
    rep.add("stats.mean_rel_deviation",
            std::abs(pairsum - enum_mean) / std::max(std::abs(enum_mean), 1e-300));

    if (p.inst.n >= 4) {
        const SecondMomentCheck chk = verify_second_moment(p.inst);
        rep.add("stats.second_moment_decomposition", chk.decomposition);
        rep.add("stats.second_moment_enumerated", chk.enumeration);
        rep.add("stats.second_moment_rel_deviation", chk.rel_deviation);
        rep.add("stats.second_moment_consistent", chk.consistent);
    }

    const EnsembleStats corrected = ensemble_stats(cfg.n, cfg.c1, cfg.c2, StatVariant::corrected);
    const EnsembleStats printed = ensemble_stats(cfg.n, cfg.c1, cfg.c2, StatVariant::printed);
    rep.add("theory.mean_est", corrected.mean_est);
    rep.add("theory.variance_est", corrected.variance_est);
    rep.add("theory.ratio", corrected.ratio);
    rep.add("theory.mean_est_printed_variant", printed.mean_est);
    rep.add("theory.variance_est_printed_variant", printed.variance_est);
    rep.add("theory.dphi_model", kPi / std::sqrt(3.0 * cfg.n));

    add_condition_block(rep, "conditions.affine", p.affine_conditions);
    const std::string groups_path = out_path(cfg, "groups.csv");
    write_groups_csv_file(p.affine_groups, groups_path);
    rep.add("files.groups", groups_path);

    add_timing(rep, sw);
    write_report_files(rep, cfg);
    return rep;
}

Report cmd_run_quantum(const ExperimentConfig& cfg) {
    const Stopwatch sw;
    validate_config(cfg);
    ensure_out_dir(cfg);
    const Pipeline p = make_pipeline(cfg);
    const OracleView view = make_oracle_view(cfg, p);
    const QuantumOutcome q = run_quantum_part(cfg, p, view);

    Report rep;
    add_config_echo(rep, cfg);
    add_instance_block(rep, p);
    add_condition_block(rep, "conditions.affine", p.affine_conditions);
    add_condition_block(rep, "conditions.oracle", oracle_conditions(cfg, p, view));
    add_quantum_block(rep, cfg, view, q);

    const std::string trace_path = out_path(cfg, "trace_quantum.csv");
    {
        std::ofstream out(trace_path);
        if (!out) throw std::runtime_error("cannot open " + trace_path);
        write_trace_csv(q.result.trace, out);
    }
    rep.add("files.trace_quantum", trace_path);

    const std::string groups_path = out_path(cfg, "groups.csv");
    write_groups_csv_file(p.affine_groups, groups_path);
    rep.add("files.groups", groups_path);

    if (cfg.shots > 0) {
        const std::vector<TourIndex> samples =
            measure(q.result.state, cfg.shots, trial_seed(cfg.seed, -1));
        std::uint64_t low = 0;
        std::uint64_t impostor = 0;
        std::uint64_t non = 0;
        for (TourIndex t : samples) {
            switch (classify_measured(p.inst, t, p.eta)) {
                case MeasuredClass::low_cost_solution: ++low; break;
                case MeasuredClass::high_cost_impostor: ++impostor; break;
                case MeasuredClass::non_solution: ++non; break;
            }
        }
        rep.add_uint("measure.shots", cfg.shots);
        rep.add_uint("measure.low_cost_solutions", low);
        rep.add_uint("measure.high_cost_impostors", impostor);
        rep.add_uint("measure.non_solutions", non);
    }

    add_timing(rep, sw);
    write_report_files(rep, cfg);
    return rep;
}

Report cmd_run_classical(const ExperimentConfig& cfg) {
    const Stopwatch sw;
    validate_config(cfg);
    ensure_out_dir(cfg);
    const Pipeline p = make_pipeline(cfg);
    const ClassicalOutcome c = run_classical_part(cfg, p);

    Report rep;
    add_config_echo(rep, cfg);
    add_instance_block(rep, p);
    add_condition_block(rep, "conditions.affine", p.affine_conditions);
    add_classical_block(rep, c);

    const std::string trials_path = out_path(cfg, "trials.csv");
    {
        std::ofstream out(trials_path);
        if (!out) throw std::runtime_error("cannot open " + trials_path);
        write_trials_csv(c.trials, out);
    }
    rep.add("files.trials", trials_path);

    add_timing(rep, sw);
    write_report_files(rep, cfg);
    return rep;
}

Report cmd_compare(const ExperimentConfig& cfg) {
    const Stopwatch sw;
    validate_config(cfg);
    ensure_out_dir(cfg);
    const Pipeline p = make_pipeline(cfg);
    const OracleView view = make_oracle_view(cfg, p);
    const QuantumOutcome q = run_quantum_part(cfg, p, view);
    const ClassicalOutcome c = run_classical_part(cfg, p);

    Report rep;
    add_config_echo(rep, cfg);
    add_instance_block(rep, p);
    add_condition_block(rep, "conditions.affine", p.affine_conditions);
    add_condition_block(rep, "conditions.oracle", oracle_conditions(cfg, p, view));
    add_quantum_block(rep, cfg, view, q);
    add_classical_block(rep, c);
    rep.add("compare.measured_ratio",
            q.R > 0 ? c.mean_queries / static_cast<double>(q.R) : 0.0);
    rep.add("compare.quantum_found_per_run", q.success);
    rep.add("compare.classical_found_rate", c.found_rate);

    const std::string trace_path = out_path(cfg, "trace_quantum.csv");
    {
        std::ofstream out(trace_path);
        if (!out) throw std::runtime_error("cannot open " + trace_path);
        write_trace_csv(q.result.trace, out);
    }
    rep.add("files.trace_quantum", trace_path);

    const std::string trials_path = out_path(cfg, "trials.csv");
    {
        std::ofstream out(trials_path);
        if (!out) throw std::runtime_error("cannot open " + trials_path);
        write_trials_csv(c.trials, out);
    }
    rep.add("files.trials", trials_path);

    const std::string groups_path = out_path(cfg, "groups_affine.csv");
    write_groups_csv_file(p.affine_groups, groups_path);
    rep.add("files.groups_affine", groups_path);

    GroupSpec oracle_groups = build_group_spec(view.pm, 1, 0.0);
    oracle_groups.eta = p.eta;
    const std::string oracle_groups_path = out_path(cfg, "groups_oracle.csv");
    write_groups_csv_file(oracle_groups, oracle_groups_path);
    rep.add("files.groups_oracle", oracle_groups_path);

    add_timing(rep, sw);
    write_report_files(rep, cfg);
    return rep;
}

namespace {

struct SweepCell {
    int n = 0;
    std::uint64_t seed = 0;
};

struct SweepRow {
    SweepCell cell;
    bool ok = false;
    std::string error;
    double f0 = std::numeric_limits<double>::quiet_NaN();
    std::uint64_t R = 0;
    double quantum_success = std::numeric_limits<double>::quiet_NaN();
    double classical_mean_queries = std::numeric_limits<double>::quiet_NaN();
    double ratio = std::numeric_limits<double>::quiet_NaN();
    double dphi = std::numeric_limits<double>::quiet_NaN();
    double eta = std::numeric_limits<double>::quiet_NaN();
    double overlap_residual = std::numeric_limits<double>::quiet_NaN();
};

[[nodiscard]] SweepRow run_sweep_cell(const ExperimentConfig& base, const SweepCell& cell) {
    SweepRow row;
    row.cell = cell;
    ExperimentConfig cfg = base;
    cfg.kind = "compare";
    cfg.n = cell.n;
    cfg.seed = cell.seed;
    std::ostringstream name;
    name << "report_n" << cell.n << "_s" << cell.seed;
    try {
        const Pipeline p = make_pipeline(cfg);
        const OracleView view = make_oracle_view(cfg, p);
        const QuantumOutcome q = run_quantum_part(cfg, p, view);
        const ClassicalOutcome c = run_classical_part(cfg, p);

        row.ok = true;
        row.f0 = view.f0;
        row.R = q.R;
        row.quantum_success = q.success;
        row.classical_mean_queries = c.mean_queries;
        row.ratio = speedup_report(view.f0, cfg.M, cfg.mode).ratio;
        row.dphi = p.stats.std_phase;
        row.eta = p.eta;
        row.overlap_residual = p.affine_conditions.overlap_residual;

        Report rep;
        add_config_echo(rep, cfg);
        add_instance_block(rep, p);
        add_condition_block(rep, "conditions.affine", p.affine_conditions);
        add_quantum_block(rep, cfg, view, q);
        add_classical_block(rep, c);
        write_report_files(rep, cfg, name.str());
    } catch (const std::exception& err) {
        row.ok = false;
        row.error = err.what();
        Report rep;
        add_config_echo(rep, cfg);
        rep.add("error", err.what());
        write_report_files(rep, cfg, name.str());
    }
    return row;
}

} // namespace

Report cmd_sweep(const ExperimentConfig& cfg) {
    const Stopwatch sw;
    validate_config(cfg);
    ensure_out_dir(cfg);

    std::vector<SweepCell> cells;
    for (int n : cfg.n_list) {
        for (std::uint64_t s : cfg.seeds) cells.push_back({n, s});
    }
    // Deterministic aggregate order regardless of worker count.
    std::sort(cells.begin(), cells.end(), [](const SweepCell& a, const SweepCell& b) {
        return a.n != b.n ? a.n < b.n : a.seed < b.seed;
    });

    std::vector<SweepRow> rows(cells.size());
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const auto worker_count =
        std::min<std::size_t>(cfg.workers > 0 ? static_cast<std::size_t>(cfg.workers) : hw,
                              cells.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) break;
            rows[i] = run_sweep_cell(cfg, cells[i]);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (std::size_t w = 0; w < worker_count; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();

    const std::string agg_path = out_path(cfg, "aggregate.csv");
    {
        std::ofstream out(agg_path);
        if (!out) throw std::runtime_error("cannot open " + agg_path);
        out << "n,seed,f0,R,quantum_success,classical_mean_queries,ratio,dphi,eta,"
               "overlap_residual\n";
        for (const SweepRow& row : rows) {
            out << row.cell.n << ',' << row.cell.seed << ',' << format_real(row.f0) << ','
                << row.R << ',' << format_real(row.quantum_success) << ','
                << format_real(row.classical_mean_queries) << ',' << format_real(row.ratio) << ','
                << format_real(row.dphi) << ',' << format_real(row.eta) << ','
                << format_real(row.overlap_residual) << '\n';
        }
    }

    Report rep;
    add_config_echo(rep, cfg);
    {
        std::ostringstream ns;
        for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
            if (i > 0) ns << ' ';
            ns << cfg.n_list[i];
        }
        rep.add("sweep.n_list", ns.str());
        rep.add_int("sweep.cells", static_cast<std::int64_t>(cells.size()));
    }
    int failed = 0;
    for (const SweepRow& row : rows) {
        if (!row.ok) {
            ++failed;
            std::ostringstream key;
            key << "sweep.error_n" << row.cell.n << "_s" << row.cell.seed;
            rep.add(key.str(), row.error);
        }
    }
    rep.add_int("sweep.failed_cells", failed);
    rep.add("files.aggregate", agg_path);
    add_timing(rep, sw);
    write_report_files(rep, cfg);
    return rep;
}

Report run_experiment(const ExperimentConfig& cfg) {
    if (cfg.kind == "gen") return cmd_gen(cfg);
    if (cfg.kind == "stats") return cmd_stats(cfg);
    if (cfg.kind == "run-quantum") return cmd_run_quantum(cfg);
    if (cfg.kind == "run-classical") return cmd_run_classical(cfg);
    if (cfg.kind == "compare") return cmd_compare(cfg);
    if (cfg.kind == "sweep") return cmd_sweep(cfg);
    throw std::invalid_argument("config: unknown experiment kind '" + cfg.kind + "'");
}

} // namespace qtsp
