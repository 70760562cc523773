#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qtsp/errors.hpp"
#include "qtsp/experiments.hpp"
#include "qtsp/instance.hpp"
#include "qtsp/report.hpp"

using namespace qtsp;
namespace fs = std::filesystem;

namespace {

/// Fresh scratch directory per test binary run.
fs::path scratch_root() {
    static const fs::path root = [] {
        fs::path p = fs::temp_directory_path() / "qtsp_experiments_tests";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return root;
}

std::string scratch_dir(const std::string& name) {
    const fs::path p = scratch_root() / name;
    fs::create_directories(p);
    return p.string();
}

std::string write_json(const std::string& name, const std::string& body) {
    const fs::path p = scratch_root() / name;
    std::ofstream out(p);
    out << body;
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::size_t line_count(const std::string& text) {
    std::size_t lines = 0;
    for (char c : text) {
        if (c == '\n') ++lines;
    }
    return lines;
}

} // namespace

TEST_CASE("load_config_file") {
    SUBCASE("values merge over the defaults") {
        const std::string path = write_json("good.json", R"({
            "kind": "compare", "n": 7, "c1": 0.5, "c2": 2.5, "seed": 42,
            "M": 4, "quantile": 0.01, "shots": 100, "trials": 50,
            "mode": "continuous", "oracle": "affine", "out": "somewhere",
            "n_list": [6, 7], "seeds": [1, 2, 3], "workers": 2
        })");
        const ExperimentConfig cfg = load_config_file(path);
        CHECK(cfg.kind == "compare");
        CHECK(cfg.n == 7);
        CHECK(cfg.c1 == 0.5);
        CHECK(cfg.c2 == 2.5);
        CHECK(cfg.seed == 42);
        CHECK(cfg.M == 4);
        CHECK(cfg.quantile == 0.01);
        CHECK(cfg.shots == 100);
        CHECK(cfg.trials == 50);
        CHECK(cfg.mode == OracleMode::continuous);
        CHECK(cfg.oracle == OracleKind::affine);
        CHECK(cfg.out_dir == "somewhere");
        CHECK(cfg.n_list == std::vector<int>{6, 7});
        CHECK(cfg.seeds == std::vector<std::uint64_t>{1, 2, 3});
        CHECK(cfg.workers == 2);
        CHECK(cfg.max_queries == 10000); // untouched default
    }
    SUBCASE("unknown key is named in the error") {
        const std::string path = write_json("unknown.json", R"({"bogus_key": 1})");
        try {
            (void)load_config_file(path);
            FAIL("expected invalid_argument");
        } catch (const std::invalid_argument& err) {
            CHECK(std::string(err.what()).find("bogus_key") != std::string::npos);
        }
    }
    SUBCASE("type mismatches and bad enums are rejected") {
        CHECK_THROWS_AS((void)load_config_file(write_json("badtype.json", R"({"n": "seven"})")),
                        std::invalid_argument);
        CHECK_THROWS_AS(
            (void)load_config_file(write_json("badmode.json", R"({"mode": "sideways"})")),
            std::invalid_argument);
        CHECK_THROWS_AS(
            (void)load_config_file(write_json("badjson.json", "{not json")),
            std::invalid_argument);
        CHECK_THROWS_AS((void)load_config_file((scratch_root() / "missing.json").string()),
                        std::invalid_argument);
    }
}

TEST_CASE("validate_config") {
    ExperimentConfig cfg;
    cfg.kind = "stats";
    CHECK_NOTHROW(validate_config(cfg));

    SUBCASE("field ranges") {
        ExperimentConfig bad = cfg;
        bad.n = 2;
        CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
        bad = cfg;
        bad.c2 = bad.c1;
        CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
        bad = cfg;
        bad.M = 0;
        CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
        bad = cfg;
        bad.quantile = 0.0;
        CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
        bad = cfg;
        bad.eta = 7.0;
        CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
        bad = cfg;
        bad.trials = 0;
        CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
    }
    SUBCASE("sweep needs both axes") {
        ExperimentConfig sweep = cfg;
        sweep.kind = "sweep";
        sweep.n_list = {};
        sweep.seeds = {1};
        CHECK_THROWS_AS(validate_config(sweep), std::invalid_argument);
        sweep.n_list = {6};
        sweep.seeds = {};
        CHECK_THROWS_AS(validate_config(sweep), std::invalid_argument);
        sweep.seeds = {1};
        CHECK_NOTHROW(validate_config(sweep));
    }
    SUBCASE("unknown kind is rejected at dispatch") {
        ExperimentConfig bad = cfg;
        bad.kind = "frobnicate";
        CHECK_THROWS_AS((void)run_experiment(bad), std::invalid_argument);
    }
}

TEST_CASE("cmd_gen writes a loadable instance") {
    ExperimentConfig cfg;
    cfg.kind = "gen";
    cfg.n = 6;
    cfg.seed = 11;
    cfg.out_dir = scratch_dir("gen");
    const Report rep = cmd_gen(cfg);
    CHECK(rep.get("instance.N") == "120");

    const TspInstance loaded = load_instance_file(rep.get("files.instance"));
    const TspInstance expect = generate_instance(6, 0.0, 1.0, 11);
    CHECK(loaded.costs == expect.costs);
    CHECK(loaded.n == expect.n);
    CHECK(loaded.seed == expect.seed);

    CHECK(fs::exists(fs::path(cfg.out_dir) / "report.txt"));
    CHECK(fs::exists(fs::path(cfg.out_dir) / "report_timing.txt"));
    // Volatile keys never leak into the deterministic report.
    CHECK(slurp((fs::path(cfg.out_dir) / "report.txt").string()).find("timing.") ==
          std::string::npos);
}

TEST_CASE("cmd_stats reports consistent statistics") {
    ExperimentConfig cfg;
    cfg.kind = "stats";
    cfg.n = 6;
    cfg.seed = 21;
    cfg.M = 4;
    cfg.out_dir = scratch_dir("stats");
    const Report rep = cmd_stats(cfg);

    CHECK(std::stod(rep.get("stats.mean_rel_deviation")) <= 1e-12);
    CHECK(rep.get("stats.second_moment_consistent") == "true");
    CHECK(std::stod(rep.get("theory.dphi_model")) ==
          doctest::Approx(3.14159265358979 / std::sqrt(18.0)));
    CHECK(std::stod(rep.get("phase.std_phase")) > 0.0);

    // groups.csv: header plus one row per group.
    const std::string groups = slurp(rep.get("files.groups"));
    CHECK(line_count(groups) == 1 + 2 * 4);
}

TEST_CASE("cmd_run_quantum amplifies the window oracle") {
    ExperimentConfig cfg;
    cfg.kind = "run-quantum";
    cfg.n = 7;
    cfg.seed = 5;
    cfg.M = 4;
    cfg.quantile = 0.01;
    cfg.shots = 400;
    cfg.out_dir = scratch_dir("runq");
    const Report rep = cmd_run_quantum(cfg);

    const double success = std::stod(rep.get("quantum.success"));
    CHECK(success >= 0.9);
    CHECK(success <= 1.0);
    CHECK(std::stod(rep.get("quantum.f0")) > 0.0);
    CHECK(rep.get("quantum.queries") == rep.get("quantum.R"));

    // Trace: header + R+1 rows.
    const auto R = std::stoull(rep.get("quantum.R"));
    CHECK(line_count(slurp(rep.get("files.trace_quantum"))) == 2 + R);

    // Measurement classification partitions the shots.
    const auto low = std::stoull(rep.get("measure.low_cost_solutions"));
    const auto imp = std::stoull(rep.get("measure.high_cost_impostors"));
    const auto non = std::stoull(rep.get("measure.non_solutions"));
    CHECK(low + imp + non == 400);
    CHECK(low >= 360); // success >= 0.9 makes low-cost hits dominate
    // The window oracle marks only the low side, so wrap-side impostors keep
    // their unamplified background probability: a handful of shots at most.
    CHECK(imp <= 2);
}

TEST_CASE("cmd_run_classical records every trial") {
    ExperimentConfig cfg;
    cfg.kind = "run-classical";
    cfg.n = 7;
    cfg.seed = 5;
    cfg.quantile = 0.01;
    cfg.trials = 64;
    cfg.out_dir = scratch_dir("runc");
    const Report rep = cmd_run_classical(cfg);

    CHECK(rep.get("classical.trials") == "64");
    CHECK(std::stod(rep.get("classical.found_rate")) == 1.0); // budget far exceeds 1/f
    CHECK(std::stod(rep.get("classical.mean_queries")) > 1.0);
    const std::string trials = slurp(rep.get("files.trials"));
    CHECK(line_count(trials) == 1 + 64);
}

TEST_CASE("cmd_compare is deterministic across reruns") {
    ExperimentConfig cfg;
    cfg.kind = "compare";
    cfg.n = 7;
    cfg.seed = 9;
    cfg.M = 4;
    cfg.quantile = 0.01;
    cfg.trials = 50;
    cfg.shots = 100;

    cfg.out_dir = scratch_dir("cmp_a");
    const Report a = cmd_compare(cfg);
    const std::string report_a = slurp((fs::path(cfg.out_dir) / "report.txt").string());
    const std::string trace_a = slurp(a.get("files.trace_quantum"));
    const std::string trials_a = slurp(a.get("files.trials"));

    cfg.out_dir = scratch_dir("cmp_b");
    const Report b = cmd_compare(cfg);
    const std::string report_b = slurp((fs::path(cfg.out_dir) / "report.txt").string());

    // Identical up to the keys that echo the output directory itself.
    std::istringstream sa(report_a);
    std::istringstream sb(report_b);
    std::string la;
    std::string lb;
    while (std::getline(sa, la) && std::getline(sb, lb)) {
        const bool path_echo =
            la.rfind("config.out=", 0) == 0 || la.rfind("files.", 0) == 0;
        if (path_echo) {
            CHECK(lb.substr(0, lb.find('=')) == la.substr(0, la.find('=')));
            continue;
        }
        CHECK(la == lb);
    }
    CHECK(line_count(report_a) == line_count(report_b));
    CHECK(trace_a == slurp(b.get("files.trace_quantum")));
    CHECK(trials_a == slurp(b.get("files.trials")));

    SUBCASE("cross-view consistency of the reported numbers") {
        const double ratio = std::stod(a.get("compare.measured_ratio"));
        const double mean_queries = std::stod(a.get("classical.mean_queries"));
        const double R = std::stod(a.get("quantum.R"));
        CHECK(ratio == doctest::Approx(mean_queries / R));
        const double success = std::stod(a.get("compare.quantum_found_per_run"));
        CHECK(success >= 0.0);
        CHECK(success <= 1.0);
    }
}

TEST_CASE("affine oracle at desk scale reports the empty group honestly") {
    ExperimentConfig cfg;
    cfg.kind = "run-quantum";
    cfg.n = 7;
    cfg.seed = 5;
    cfg.M = 8;
    cfg.oracle = OracleKind::affine;
    cfg.out_dir = scratch_dir("affine_empty");
    try {
        (void)cmd_run_quantum(cfg);
        FAIL("expected invalid_argument for the empty phase-0 group");
    } catch (const std::invalid_argument& err) {
        CHECK(std::string(err.what()).find("window") != std::string::npos);
    }
}

TEST_CASE("explicit eta overrides the quantile") {
    ExperimentConfig cfg;
    cfg.kind = "stats";
    cfg.n = 6;
    cfg.seed = 3;
    cfg.eta = 0.25;
    cfg.out_dir = scratch_dir("eta_override");
    const Report rep = cmd_stats(cfg);
    CHECK(rep.get("window.eta") == format_real(0.25));
}

TEST_CASE("cmd_sweep") {
    ExperimentConfig cfg;
    cfg.kind = "sweep";
    cfg.n_list = {7, 6};
    cfg.seeds = {2, 1};
    cfg.M = 4;
    cfg.quantile = 0.01;
    cfg.trials = 20;

    SUBCASE("aggregate rows are sorted and worker-count independent") {
        cfg.workers = 1;
        cfg.out_dir = scratch_dir("sweep_w1");
        const Report r1 = cmd_sweep(cfg);
        const std::string agg1 = slurp(r1.get("files.aggregate"));

        cfg.workers = 4;
        cfg.out_dir = scratch_dir("sweep_w4");
        const Report r4 = cmd_sweep(cfg);
        const std::string agg4 = slurp(r4.get("files.aggregate"));

        CHECK(agg1 == agg4);
        CHECK(r1.get("sweep.failed_cells") == "0");
        CHECK(line_count(agg1) == 1 + 4);

        // Rows ordered by (n, seed) even though the config lists them shuffled.
        std::istringstream in(agg1);
        std::string line;
        std::getline(in, line); // header
        std::vector<std::string> prefixes;
        while (std::getline(in, line)) {
            prefixes.push_back(line.substr(0, line.find(',', line.find(',') + 1)));
        }
        CHECK(prefixes == std::vector<std::string>{"6,1", "6,2", "7,1", "7,2"});

        // Each cell leaves its own report file.
        CHECK(fs::exists(fs::path(cfg.out_dir) / "report_n6_s1.txt"));
        CHECK(fs::exists(fs::path(cfg.out_dir) / "report_n7_s2.txt"));
    }
    SUBCASE("cells beyond the budget fail without sinking the sweep") {
        cfg.n_list = {6, 12}; // 12 exceeds the enumeration budget
        cfg.seeds = {1};
        cfg.out_dir = scratch_dir("sweep_fail");
        const Report rep = cmd_sweep(cfg);
        CHECK(rep.get("sweep.failed_cells") == "1");
        CHECK_FALSE(rep.get("sweep.error_n12_s1").empty());
        const std::string agg = slurp(rep.get("files.aggregate"));
        CHECK(line_count(agg) == 1 + 2);
        CHECK(agg.find("nan") != std::string::npos);
        CHECK(agg.find("6,1") != std::string::npos);
    }
}
