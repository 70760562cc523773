#include "qtsp/theory.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qtsp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kZ99 = 2.5758293035489004; ///< two-sided 99% normal quantile

/// Standard normal CDF via erfc, stable in both tails.
double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

/// Adaptive Simpson quadrature with absolute tolerance control.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 double scale_hint) {
    if (!(b > a)) return 0.0;
    const double fa = f(a);
    const double fm = f(0.5 * (a + b));
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    // Absolute tolerance anchored to a caller-provided magnitude so narrow
    // windows with tiny mass still converge relative to their own size.
    const double tol = rel_tol * std::max(std::abs(whole), scale_hint);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

} // namespace

EnsembleStats ensemble_stats(int n, double c1, double c2, StatVariant variant) {
    if (n < 3) throw std::invalid_argument("ensemble_stats: n must be >= 3");
    if (!(c2 > c1)) throw std::invalid_argument("ensemble_stats: require c2 > c1");
    EnsembleStats es;
    es.variant = variant;
    if (variant == StatVariant::corrected) {
        es.mean_est = n * (c1 + c2) / 2.0;
        es.variance_est = n * (c2 - c1) * (c2 - c1) / 12.0;
    } else {
        es.mean_est = n * (c2 - c1) / 2.0;
        es.variance_est = n * (c2 * c2 + 10.0 * c2 * c1 + c1 * c1) / 12.0;
    }
    es.second_moment_est = es.variance_est + es.mean_est * es.mean_est;
    es.ratio = es.mean_est != 0.0 ? std::sqrt(es.variance_est) / es.mean_est : 0.0;
    return es;
}

GaussianModel make_gaussian_model(double mean, double std, double N, int n, double c1,
                                  double c2) {
    if (!(std > 0.0)) throw std::invalid_argument("make_gaussian_model: std must be > 0");
    if (!(N > 0.0)) throw std::invalid_argument("make_gaussian_model: N must be > 0");
    GaussianModel model;
    model.mean = mean;
    model.std = std;
    model.N = N;
    // Truncated normalization: nu0 / (sqrt(2 pi) Z) integrates to exactly N
    // over [n*c1, n*c2].
    const double zlo = (n * c1 - mean) / std;
    const double zhi = (n * c2 - mean) / std;
    const double Z = normal_cdf(zhi) - normal_cdf(zlo);
    if (!(Z > 0.0)) throw std::invalid_argument("make_gaussian_model: support carries no mass");
    model.norm = 1.0 / (std::sqrt(kTwoPi) * Z);
    return model;
}

double gaussian_density(const GaussianModel& model, double c) {
    const double z = (c - model.mean) / model.std;
    return model.N * model.norm / model.std * std::exp(-0.5 * z * z);
}

namespace {

/// Model mass of the cost interval [a, b]: quadrature by default, erfc form
/// when the whole interval sits more than 6 sigma from the mean.
double gaussian_mass(const GaussianModel& model, double a, double b) {
    if (!(b > a)) return 0.0;
    const double za = (a - model.mean) / model.std;
    const double zb = (b - model.mean) / model.std;
    const double nearest = std::min(std::abs(za), std::abs(zb));
    const bool same_side = (za >= 0.0) == (zb >= 0.0);
    if (same_side && nearest > 6.0) {
        const double lo = std::min(std::abs(za), std::abs(zb));
        const double hi = std::max(std::abs(za), std::abs(zb));
        // Phi(-lo) - Phi(-hi), scaled by the truncated normalization.
        const double mass = normal_cdf(-lo) - normal_cdf(-hi);
        return model.N * model.norm * std::sqrt(kTwoPi) * mass;
    }
    const double scale_hint = model.N * model.norm; // ~peak density * std
    return integrate([&](double c) { return gaussian_density(model, c); }, a, b, 1e-8,
                     scale_hint * 1e-6);
}

} // namespace

double gaussian_f0(double eta, const GaussianModel& model, int n, double c1, double c2) {
    if (eta < 0.0 || eta > kTwoPi) {
        throw std::invalid_argument("gaussian_f0: require 0 <= eta <= 2*pi");
    }
    const double lo = n * c1;
    const double hi = n * c2;
    // Cost width of the half-window eta/2 under the affine phase map.
    const double w = (eta / 2.0) / kTwoPi * (hi - lo);
    const double low_mass = gaussian_mass(model, lo, std::min(lo + w, hi));
    const double high_mass = gaussian_mass(model, std::max(hi - w, lo), hi);
    return (low_mass + high_mass) / model.N;
}

double gaussian_support_tail(const GaussianModel& model, int n, double c1, double c2) {
    const double zlo = (model.mean - n * c1) / model.std;
    const double zhi = (n * c2 - model.mean) / model.std;
    return normal_cdf(-zlo) + normal_cdf(-zhi);
}

double asymptotic_f(int n) {
    if (n < 3) throw std::invalid_argument("asymptotic_f: n must be >= 3");
    return std::exp(-1.5 * n - 0.5 * std::log(static_cast<double>(n)));
}

SpeedupReport speedup_report(double f0, int M, OracleMode mode) {
    if (!(f0 > 0.0) || !(f0 < 1.0)) {
        throw std::invalid_argument("speedup_report: require 0 < f0 < 1");
    }
    SpeedupReport sr;
    sr.classical_queries = 1.0 / f0;
    sr.quantum_queries = iteration_count(f0, M, mode);
    sr.ratio = sr.classical_queries / static_cast<double>(sr.quantum_queries);
    return sr;
}

VarianceResolution resolve_variance_variant(int n, double c1, double c2, int instances,
                                            std::uint64_t seed_base) {
    if (instances < 2) {
        throw std::invalid_argument("resolve_variance_variant: need at least 2 instances");
    }
    // Per instance: A_i = mean of squared tour costs (full enumeration),
    // B_i = exact mean tour cost. The ensemble variance estimate is
    // theta = mean(A) - mean(B)^2; its standard error comes from the delta
    // method on (mean(A), mean(B)).
    std::vector<double> A(static_cast<std::size_t>(instances));
    std::vector<double> B(static_cast<std::size_t>(instances));
    for (int i = 0; i < instances; ++i) {
        const TspInstance inst = generate_instance(n, c1, c2, seed_base + static_cast<std::uint64_t>(i));
        const std::vector<double> costs = enumerate_costs(inst);
        long double acc = 0.0L;
        for (double c : costs) acc += static_cast<long double>(c) * c;
        A[static_cast<std::size_t>(i)] = static_cast<double>(acc / costs.size());
        B[static_cast<std::size_t>(i)] = exact_mean_pairsum(inst);
    }

    const auto m = static_cast<double>(instances);
    long double sa = 0.0L;
    long double sb = 0.0L;
    for (int i = 0; i < instances; ++i) {
        sa += A[static_cast<std::size_t>(i)];
        sb += B[static_cast<std::size_t>(i)];
    }
    const double Abar = static_cast<double>(sa) / m;
    const double Bbar = static_cast<double>(sb) / m;

    long double saa = 0.0L;
    long double sbb = 0.0L;
    long double sab = 0.0L;
    for (int i = 0; i < instances; ++i) {
        const double da = A[static_cast<std::size_t>(i)] - Abar;
        const double db = B[static_cast<std::size_t>(i)] - Bbar;
        saa += static_cast<long double>(da) * da;
        sbb += static_cast<long double>(db) * db;
        sab += static_cast<long double>(da) * db;
    }
    const double SAA = static_cast<double>(saa) / (m - 1.0);
    const double SBB = static_cast<double>(sbb) / (m - 1.0);
    const double SAB = static_cast<double>(sab) / (m - 1.0);

    VarianceResolution vr;
    vr.measured = Abar - Bbar * Bbar;
    const double var_theta = (SAA - 4.0 * Bbar * SAB + 4.0 * Bbar * Bbar * SBB) / m;
    vr.half_width = kZ99 * std::sqrt(std::max(var_theta, 0.0));
    vr.corrected_value = ensemble_stats(n, c1, c2, StatVariant::corrected).variance_est;
    vr.printed_value = ensemble_stats(n, c1, c2, StatVariant::printed).variance_est;
    vr.corrected_in_ci = std::abs(vr.measured - vr.corrected_value) <= vr.half_width;
    vr.printed_in_ci = std::abs(vr.measured - vr.printed_value) <= vr.half_width;
    return vr;
}

} // namespace qtsp
