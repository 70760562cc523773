#include "qtsp/quantum_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "qtsp/errors.hpp"
#include "qtsp/rng.hpp"

namespace qtsp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kRenormInterval = 100;

/// Per-tour oracle multipliers, computed once per run. In discretized mode
/// every tour of a group gets the bit-identical multiplier exp(i j pi/M).
std::vector<std::complex<double>> oracle_multipliers(const PhaseMap& pm, OracleMode mode, int M) {
    std::vector<std::complex<double>> mult(pm.phases.size());
    if (mode == OracleMode::continuous) {
        for (std::size_t k = 0; k < pm.phases.size(); ++k) {
            mult[k] = std::polar(1.0, pm.phases[k]);
        }
    } else {
        std::vector<std::complex<double>> nominal(static_cast<std::size_t>(2 * M));
        for (int j = 0; j < 2 * M; ++j) {
            nominal[static_cast<std::size_t>(j)] = std::polar(1.0, static_cast<double>(j) * kPi / M);
        }
        for (std::size_t k = 0; k < pm.phases.size(); ++k) {
            mult[k] = nominal[static_cast<std::size_t>(discretize_phase(pm.phases[k], M))];
        }
    }
    return mult;
}

/// Serial long-double reduction of the amplitude sum; deterministic order.
std::complex<double> amplitude_sum(const StateVector& sv) {
    long double re = 0.0L;
    long double im = 0.0L;
    for (const auto& a : sv.amps) {
        re += a.real();
        im += a.imag();
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

long double norm_squared(const StateVector& sv) {
    long double s = 0.0L;
    for (const auto& a : sv.amps) {
        s += static_cast<long double>(a.real()) * a.real() +
             static_cast<long double>(a.imag()) * a.imag();
    }
    return s;
}

void grover_step(StateVector& sv, const std::vector<std::complex<double>>& mult) {
    const std::size_t N = sv.amps.size();
    for (std::size_t k = 0; k < N; ++k) sv.amps[k] *= mult[k];
    const std::complex<double> total = amplitude_sum(sv);
    const std::complex<double> shift = (2.0 / static_cast<double>(N)) * total;
    // I_{psi0} then the literal global minus of G = -I_{psi0} C.
    for (std::size_t k = 0; k < N; ++k) sv.amps[k] = shift - sv.amps[k];
}

} // namespace

StateVector init_uniform(std::uint64_t N, std::uint64_t max_N) {
    if (N < 1) throw std::invalid_argument("init_uniform: N must be >= 1");
    if (max_N == 0) max_N = tour_count(kDefaultStatevectorLimit);
    if (N > max_N) {
        throw resource_error("init_uniform: N = " + std::to_string(N) +
                             " exceeds the statevector budget of " + std::to_string(max_N) +
                             " amplitudes");
    }
    StateVector sv;
    sv.amps.assign(N, std::complex<double>(1.0 / std::sqrt(static_cast<double>(N)), 0.0));
    return sv;
}

void apply_cost_oracle(StateVector& sv, const PhaseMap& pm, OracleMode mode, int M) {
    if (sv.amps.size() != pm.phases.size()) {
        throw std::invalid_argument("apply_cost_oracle: statevector and phase map sizes differ");
    }
    const auto mult = oracle_multipliers(pm, mode, M);
    for (std::size_t k = 0; k < sv.amps.size(); ++k) sv.amps[k] *= mult[k];
}

void apply_grover(StateVector& sv, const PhaseMap& pm, OracleMode mode, int M) {
    if (sv.amps.size() != pm.phases.size()) {
        throw std::invalid_argument("apply_grover: statevector and phase map sizes differ");
    }
    const auto mult = oracle_multipliers(pm, mode, M);
    grover_step(sv, mult);
}

std::uint64_t iteration_count(double f0, int M, OracleMode mode, bool* clamped) {
    if (!(f0 > 0.0) || !(f0 < 1.0)) {
        throw std::invalid_argument("iteration_count: require 0 < f0 < 1");
    }
    if (mode == OracleMode::discretized && M < 1) {
        throw std::invalid_argument("iteration_count: M must be >= 1 in discretized mode");
    }
    const double root = std::sqrt(f0);
    bool was_clamped = false;
    std::uint64_t R = 0;
    if (mode == OracleMode::continuous) {
        long long inner = std::llround((kPi / 2.0 - root) / (2.0 * root));
        if (inner < 1) {
            inner = 1;
            was_clamped = true;
        }
        R = static_cast<std::uint64_t>(inner);
    } else {
        long long inner = std::llround((kPi / 2.0 - root) / (4.0 * M * root));
        if (inner < 1) {
            inner = 1;
            was_clamped = true;
        }
        R = static_cast<std::uint64_t>(2 * M) * static_cast<std::uint64_t>(inner);
    }
    if (clamped != nullptr) *clamped = was_clamped;
    return R;
}

RunResult run(const StateVector& sv0, const PhaseMap& pm, const GroverConfig& cfg) {
    if (sv0.amps.size() != pm.phases.size()) {
        throw std::invalid_argument("run: statevector and phase map sizes differ");
    }
    RunResult res;
    res.state = sv0;

    const auto mult = oracle_multipliers(pm, cfg.mode, cfg.M);

    // The phase-0 set for the trace: tours whose phase discretizes to group 0
    // under the run's M (this includes the wrap side next to 2*pi).
    std::vector<TourIndex> group0;
    for (std::size_t k = 0; k < pm.phases.size(); ++k) {
        if (discretize_phase(pm.phases[k], cfg.M) == 0) group0.push_back(static_cast<TourIndex>(k));
    }

    auto record = [&](std::uint64_t step) {
        TraceRow row;
        row.step = step;
        row.query_count = step;
        row.p_group0 = success_probability(res.state, group0);
        row.p_target = success_probability(res.state, cfg.target);
        row.norm_drift = std::abs(static_cast<double>(std::sqrt(norm_squared(res.state))) - 1.0);
        res.trace.push_back(row);
    };

    res.trace.reserve(static_cast<std::size_t>(cfg.R) + 1);
    record(0);
    for (std::uint64_t step = 1; step <= cfg.R; ++step) {
        grover_step(res.state, mult);
        ++res.queries;
        if (step % kRenormInterval == 0) {
            const long double n2 = norm_squared(res.state);
            const double correction = std::abs(static_cast<double>(std::sqrt(n2)) - 1.0);
            res.max_renorm_correction = std::max(res.max_renorm_correction, correction);
            const double inv = static_cast<double>(1.0L / std::sqrt(n2));
            for (auto& a : res.state.amps) a *= inv;
            ++res.renormalizations;
        }
        record(step);
    }
    return res;
}

double success_probability(const StateVector& sv, const std::vector<TourIndex>& target) {
    long double p = 0.0L;
    for (TourIndex k : target) {
        if (k >= sv.amps.size()) {
            throw std::invalid_argument("success_probability: target index out of range");
        }
        const auto& a = sv.amps[static_cast<std::size_t>(k)];
        p += static_cast<long double>(a.real()) * a.real() +
             static_cast<long double>(a.imag()) * a.imag();
    }
    return static_cast<double>(p);
}

std::vector<TourIndex> measure(const StateVector& sv, std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("measure: shots must be >= 1");
    const std::size_t N = sv.amps.size();
    std::vector<double> cdf(N);
    long double acc = 0.0L;
    for (std::size_t k = 0; k < N; ++k) {
        const auto& a = sv.amps[k];
        acc += static_cast<long double>(a.real()) * a.real() +
               static_cast<long double>(a.imag()) * a.imag();
        cdf[k] = static_cast<double>(acc);
    }
    cdf[N - 1] = std::max(cdf[N - 1], 1.0); // guard the top against rounding

    std::mt19937_64 rng(seed);
    std::vector<TourIndex> out;
    out.reserve(static_cast<std::size_t>(shots));
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = uniform_unit(rng);
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const auto idx = static_cast<std::size_t>(std::min<std::ptrdiff_t>(
            it - cdf.begin(), static_cast<std::ptrdiff_t>(N) - 1));
        out.push_back(static_cast<TourIndex>(idx));
    }
    return out;
}

MeasuredClass classify_measured(const TspInstance& inst, TourIndex t, double eta) {
    const Tour tour = tour_from_index(t, inst.n);
    const double phi = cost_to_phase(tour_cost(inst, tour), inst.n, inst.c1, inst.c2);
    const double half = eta / 2.0;
    if (phi <= half) return MeasuredClass::low_cost_solution;
    if (phi >= 2.0 * kPi - half) return MeasuredClass::high_cost_impostor;
    return MeasuredClass::non_solution;
}

void write_trace_csv(const std::vector<TraceRow>& trace, std::ostream& out) {
    out << "step,query_count,p_group0,p_target,norm_drift\n";
    char buf[160];
    for (const TraceRow& row : trace) {
        std::snprintf(buf, sizeof buf, "%llu,%llu,%.17g,%.17g,%.17g\n",
                      static_cast<unsigned long long>(row.step),
                      static_cast<unsigned long long>(row.query_count), row.p_group0,
                      row.p_target, row.norm_drift);
        out << buf;
    }
}

} // namespace qtsp
