#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "qtsp/instance.hpp"
#include "qtsp/phase.hpp"
#include "qtsp/theory.hpp"

using namespace qtsp;

namespace {
constexpr double kPi = std::numbers::pi;

/// Independent quadrature oracle: midpoint Riemann sum of the model density.
double midpoint_mass(const GaussianModel& model, double a, double b, int points = 200000) {
    if (!(b > a)) return 0.0;
    const double h = (b - a) / points;
    long double acc = 0.0L;
    for (int i = 0; i < points; ++i) {
        acc += gaussian_density(model, a + (i + 0.5) * h);
    }
    return static_cast<double>(acc * h);
}
} // namespace

TEST_CASE("ensemble_stats") {
    SUBCASE("unit-interval costs at n = 10") {
        const EnsembleStats es = ensemble_stats(10, 0.0, 1.0);
        CHECK(es.mean_est == doctest::Approx(5.0));
        CHECK(es.variance_est == doctest::Approx(10.0 / 12.0));
        CHECK(es.second_moment_est == doctest::Approx(25.0 + 10.0 / 12.0));
        CHECK(es.ratio == doctest::Approx(std::sqrt(10.0 / 12.0) / 5.0));
    }
    SUBCASE("variants coincide exactly at c1 = 0") {
        const EnsembleStats a = ensemble_stats(9, 0.0, 2.0, StatVariant::corrected);
        const EnsembleStats b = ensemble_stats(9, 0.0, 2.0, StatVariant::printed);
        CHECK(a.mean_est == b.mean_est);
        CHECK(a.variance_est == b.variance_est);
        CHECK(a.second_moment_est == b.second_moment_est);
    }
    SUBCASE("variants separate for c1 > 0") {
        const EnsembleStats corrected = ensemble_stats(10, 1.0, 3.0, StatVariant::corrected);
        const EnsembleStats printed = ensemble_stats(10, 1.0, 3.0, StatVariant::printed);
        CHECK(corrected.mean_est == doctest::Approx(20.0));
        CHECK(corrected.variance_est == doctest::Approx(10.0 * 4.0 / 12.0));
        CHECK(printed.mean_est == doctest::Approx(10.0));
        CHECK(printed.variance_est == doctest::Approx(10.0 * (9.0 + 30.0 + 1.0) / 12.0));
    }
    SUBCASE("relative spread falls like the inverse square root") {
        const double r4 = ensemble_stats(4, 0.0, 1.0).ratio;
        const double r16 = ensemble_stats(16, 0.0, 1.0).ratio;
        CHECK(r16 / r4 == doctest::Approx(0.5));
    }
    SUBCASE("domain checks") {
        CHECK_THROWS_AS((void)ensemble_stats(2, 0.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS((void)ensemble_stats(5, 1.0, 1.0), std::invalid_argument);
    }
}

TEST_CASE("gaussian model normalization") {
    struct Case {
        double mean, std;
        int n;
        double c1, c2;
    };
    // Includes a heavily truncated model where the support cuts both tails.
    for (const Case c : {Case{5.0, std::sqrt(10.0 / 12.0), 10, 0.0, 1.0},
                         Case{2.0, 3.0, 10, 0.0, 1.0}, Case{5.0, 0.35, 10, 0.0, 1.0}}) {
        const GaussianModel model =
            make_gaussian_model(c.mean, c.std, 362880.0, c.n, c.c1, c.c2);
        const double integral = midpoint_mass(model, c.n * c.c1, c.n * c.c2);
        CHECK(std::abs(integral - model.N) / model.N <= 1e-6);
    }
    SUBCASE("degenerate inputs rejected") {
        CHECK_THROWS_AS((void)make_gaussian_model(5.0, 0.0, 100.0, 10, 0.0, 1.0),
                        std::invalid_argument);
        CHECK_THROWS_AS((void)make_gaussian_model(5.0, 1.0, 0.0, 10, 0.0, 1.0),
                        std::invalid_argument);
    }
}

TEST_CASE("gaussian_f0") {
    const GaussianModel model =
        make_gaussian_model(5.0, std::sqrt(10.0 / 12.0), 362880.0, 10, 0.0, 1.0);
    SUBCASE("window limits") {
        CHECK(gaussian_f0(0.0, model, 10, 0.0, 1.0) == 0.0);
        CHECK(gaussian_f0(2 * kPi, model, 10, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-7));
        CHECK_THROWS_AS((void)gaussian_f0(-0.1, model, 10, 0.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS((void)gaussian_f0(7.0, model, 10, 0.0, 1.0), std::invalid_argument);
    }
    SUBCASE("strictly increasing in eta") {
        double prev = 0.0;
        for (double eta = 0.2; eta <= 2 * kPi + 1e-9; eta += 0.2) {
            const double f = gaussian_f0(std::min(eta, 2 * kPi), model, 10, 0.0, 1.0);
            CHECK(f > prev);
            prev = f;
        }
    }
    SUBCASE("matches an independent quadrature of the same windows") {
        const GaussianModel skew = make_gaussian_model(2.0, 1.0, 1000.0, 10, 0.0, 1.0);
        for (double eta : {0.3, 0.7, 1.2, 3.0}) {
            const double w = (eta / 2.0) / (2 * kPi) * 10.0;
            const double oracle =
                (midpoint_mass(skew, 0.0, w) + midpoint_mass(skew, 10.0 - w, 10.0)) / skew.N;
            const double got = gaussian_f0(eta, skew, 10, 0.0, 1.0);
            CHECK(std::abs(got - oracle) / oracle <= 1e-6);
        }
    }
    SUBCASE("far-tail windows use the stable closed form") {
        // Both windows sit beyond 6 sigma: [0, 0.6] and [9.4, 10] at mean 5,
        // std 0.45 span z in [-11.1, -9.8] and [9.8, 11.1].
        const GaussianModel narrow = make_gaussian_model(5.0, 0.45, 1000.0, 10, 0.0, 1.0);
        const double eta = 0.24 * kPi; // cost half-window w = 0.6
        const double got = gaussian_f0(eta, narrow, 10, 0.0, 1.0);
        const double oracle =
            (midpoint_mass(narrow, 0.0, 0.6) + midpoint_mass(narrow, 9.4, 10.0)) / narrow.N;
        CHECK(got > 0.0);
        CHECK(std::abs(got - oracle) / oracle <= 1e-6);
    }
}

TEST_CASE("gaussian_f0 tracks enumerated window populations") {
    // Ensemble-model prediction vs exact enumeration, eta = 4 * dphi per
    // instance, ratio of the two means over a frozen instance family.
    const int n = 9;
    const int instances = 50;
    long double sum_model = 0.0L;
    long double sum_emp = 0.0L;
    for (int i = 0; i < instances; ++i) {
        const TspInstance inst = generate_instance(n, 0.0, 1.0, 60'000 + static_cast<std::uint64_t>(i));
        const PhaseMap pm = build_phase_map(inst);
        const PhaseStats ps = phase_stats(pm);
        const double eta = 4.0 * ps.std_phase;
        const GaussianModel model = make_gaussian_model(
            ps.mean_cost, ps.std_cost, static_cast<double>(tour_count(n)), n, 0.0, 1.0);
        sum_model += gaussian_f0(eta, model, n, 0.0, 1.0);
        std::uint64_t inside = 0;
        for (double phi : pm.phases) {
            if (phi <= eta / 2.0 || phi >= 2 * kPi - eta / 2.0) ++inside;
        }
        sum_emp += static_cast<long double>(inside) / static_cast<long double>(pm.phases.size());
    }
    const double ratio = static_cast<double>(sum_model / sum_emp);
    CHECK(ratio > 0.5);
    CHECK(ratio < 2.0);
}

TEST_CASE("gaussian_support_tail and asymptotic_f") {
    SUBCASE("direct evaluation at n = 10") {
        CHECK(asymptotic_f(10) == doctest::Approx(9.67e-8).epsilon(1e-3));
        CHECK_THROWS_AS((void)asymptotic_f(2), std::invalid_argument);
    }
    SUBCASE("log decrement approaches three halves") {
        // asymptotic_f(n) underflows double range near n = 460, so stay below.
        for (int n : {10, 100, 400}) {
            const double diff = std::log(asymptotic_f(n)) - std::log(asymptotic_f(n + 1));
            CHECK(diff == doctest::Approx(1.5 + 0.5 * std::log((n + 1.0) / n)).epsilon(1e-9));
            CHECK(std::abs(diff - 1.5) <= 0.5 / n);
        }
    }
    SUBCASE("support tail of the ensemble model matches the asymptotic law") {
        // At c1 = 0 the support edge sits at z = sqrt(3n); the two-sided erfc
        // tail and exp(-(3/2)n - (1/2)ln n) agree within a factor of 3.
        for (int n = 8; n <= 12; ++n) {
            const EnsembleStats es = ensemble_stats(n, 0.0, 1.0);
            const GaussianModel model = make_gaussian_model(
                es.mean_est, std::sqrt(es.variance_est), 1000.0, n, 0.0, 1.0);
            const double tail = gaussian_support_tail(model, n, 0.0, 1.0);
            const double asym = asymptotic_f(n);
            CHECK(asym / tail < 3.0);
            CHECK(asym / tail > 1.0 / 3.0);
        }
    }
}

TEST_CASE("speedup_report") {
    SUBCASE("small window, continuous mode") {
        const SpeedupReport sr = speedup_report(1e-4, 1, OracleMode::continuous);
        CHECK(sr.classical_queries == doctest::Approx(1e4));
        CHECK(sr.quantum_queries == 78);
        CHECK(sr.ratio == doctest::Approx(1e4 / 78.0));
    }
    SUBCASE("quarter population") {
        const SpeedupReport sr = speedup_report(0.25, 1, OracleMode::continuous);
        CHECK(sr.classical_queries == doctest::Approx(4.0));
        CHECK(sr.quantum_queries == 1);
        CHECK(sr.ratio == doctest::Approx(4.0));
    }
    SUBCASE("ratio scales with the square root of the population") {
        const double r1 = speedup_report(1e-4, 1, OracleMode::continuous).ratio;
        const double r2 = speedup_report(1e-6, 1, OracleMode::continuous).ratio;
        CHECK(r1 / r2 == doctest::Approx(0.1).epsilon(0.02));
    }
    SUBCASE("domain") {
        CHECK_THROWS_AS((void)speedup_report(0.0, 1), std::invalid_argument);
        CHECK_THROWS_AS((void)speedup_report(1.0, 1), std::invalid_argument);
    }
}

TEST_CASE("resolve_variance_variant") {
    SUBCASE("offset interval separates the two variants") {
        const VarianceResolution vr = resolve_variance_variant(7, 1.0, 3.0, 2000, 777'000);
        CHECK(vr.corrected_value == doctest::Approx(7.0 * 4.0 / 12.0));
        CHECK(vr.printed_value == doctest::Approx(7.0 * 40.0 / 12.0));
        CHECK(vr.corrected_in_ci);
        CHECK_FALSE(vr.printed_in_ci);
    }
    SUBCASE("zero-based interval cannot separate them") {
        const VarianceResolution vr = resolve_variance_variant(6, 0.0, 1.0, 500, 888'000);
        CHECK(vr.corrected_value == vr.printed_value);
        CHECK(vr.corrected_in_ci == vr.printed_in_ci);
        CHECK(vr.corrected_in_ci);
    }
    SUBCASE("needs at least two instances") {
        CHECK_THROWS_AS((void)resolve_variance_variant(6, 0.0, 1.0, 1, 1), std::invalid_argument);
    }
}
