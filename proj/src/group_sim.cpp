#include "qtsp/group_sim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qtsp/quantum_sim.hpp"

namespace qtsp {

namespace {
constexpr double kPi = std::numbers::pi;
} // namespace

GroupState init_group_state(const std::vector<double>& fractions) {
    if (fractions.empty() || fractions.size() % 2 != 0) {
        throw std::invalid_argument("init_group_state: need 2M fractions, M >= 1");
    }
    long double sum = 0.0L;
    for (double f : fractions) {
        if (f < 0.0) throw std::invalid_argument("init_group_state: fractions must be >= 0");
        sum += f;
    }
    if (std::abs(static_cast<double>(sum) - 1.0) > 1e-9) {
        throw std::invalid_argument("init_group_state: fractions must sum to 1");
    }
    GroupState gs;
    gs.fractions = fractions;
    gs.amps.resize(fractions.size());
    for (std::size_t j = 0; j < fractions.size(); ++j) {
        gs.amps[j] = std::complex<double>(std::sqrt(fractions[j]), 0.0);
    }
    return gs;
}

void group_oracle(GroupState& gs) {
    const int M = static_cast<int>(gs.amps.size() / 2);
    for (std::size_t j = 0; j < gs.amps.size(); ++j) {
        gs.amps[j] *= std::polar(1.0, static_cast<double>(j) * kPi / M);
    }
}

void group_reflection(GroupState& gs) {
    std::complex<long double> inner = 0.0L;
    for (std::size_t j = 0; j < gs.amps.size(); ++j) {
        inner += static_cast<long double>(std::sqrt(gs.fractions[j])) *
                 std::complex<long double>(gs.amps[j].real(), gs.amps[j].imag());
    }
    const std::complex<double> twice(static_cast<double>(2.0L * inner.real()),
                                     static_cast<double>(2.0L * inner.imag()));
    for (std::size_t j = 0; j < gs.amps.size(); ++j) {
        gs.amps[j] -= twice * std::sqrt(gs.fractions[j]);
    }
}

void group_grover(GroupState& gs) {
    group_oracle(gs);
    group_reflection(gs);
    for (auto& a : gs.amps) a = -a;
}

std::vector<std::vector<double>> group_run(GroupState& gs, std::uint64_t R) {
    std::vector<std::vector<double>> populations;
    populations.reserve(static_cast<std::size_t>(R) + 1);
    auto record = [&] {
        std::vector<double> p(gs.amps.size());
        for (std::size_t j = 0; j < gs.amps.size(); ++j) p[j] = std::norm(gs.amps[j]);
        populations.push_back(std::move(p));
    };
    record();
    for (std::uint64_t r = 0; r < R; ++r) {
        group_grover(gs);
        record();
    }
    return populations;
}

double compare_full_vs_group(const TspInstance& inst, int M, std::uint64_t R) {
    const PhaseMap pm = build_phase_map(inst);
    const GroupSpec spec = build_group_spec(pm, M, 0.0);

    // Group membership of every tour, for projecting the full state.
    std::vector<int> group_of(pm.phases.size());
    for (std::size_t k = 0; k < pm.phases.size(); ++k) {
        group_of[k] = discretize_phase(pm.phases[k], M);
    }

    StateVector sv = init_uniform(pm.phases.size());
    GroupState gs = init_group_state(spec.fractions);

    const auto project = [&](const StateVector& state) {
        std::vector<long double> p(static_cast<std::size_t>(2 * M), 0.0L);
        for (std::size_t k = 0; k < state.amps.size(); ++k) {
            const auto& a = state.amps[k];
            p[static_cast<std::size_t>(group_of[k])] +=
                static_cast<long double>(a.real()) * a.real() +
                static_cast<long double>(a.imag()) * a.imag();
        }
        return p;
    };

    double max_dev = 0.0;
    const auto compare_now = [&] {
        const auto full = project(sv);
        for (std::size_t j = 0; j < gs.amps.size(); ++j) {
            const double dev = std::abs(static_cast<double>(full[j]) - std::norm(gs.amps[j]));
            max_dev = std::max(max_dev, dev);
        }
    };

    compare_now();
    for (std::uint64_t r = 0; r < R; ++r) {
        apply_grover(sv, pm, OracleMode::discretized, M);
        group_grover(gs);
        compare_now();
    }
    return max_dev;
}

} // namespace qtsp
