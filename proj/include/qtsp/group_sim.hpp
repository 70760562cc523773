#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qtsp/instance.hpp"
#include "qtsp/phase.hpp"

namespace qtsp {

/// State in the invariant 2M-dimensional subspace spanned by the group states
/// |phi_j>. The uniform tour superposition is amps[j] = sqrt(f_j).
struct GroupState {
    std::vector<std::complex<double>> amps; ///< length 2M
    std::vector<double> fractions;          ///< f_j defining |psi0> in this basis
};

/// Initial group state for the given populations: amps[j] = sqrt(f_j).
/// Groups with f_j = 0 stay in the basis with zero amplitude throughout.
[[nodiscard]] GroupState init_group_state(const std::vector<double>& fractions);

/// Reduced oracle: amps[j] *= exp(i j pi / M) with M = fractions.size()/2.
void group_oracle(GroupState& gs);

/// Reflection about |psi0> within the subspace:
/// amps -= 2 (sum_k sqrt(f_k) amps[k]) sqrt(f_j). The overall minus sign of G
/// is applied by group_grover, not here.
void group_reflection(GroupState& gs);

/// One full G = -I_{psi0} C step in the group basis.
void group_grover(GroupState& gs);

/// Applies R steps; returns per-step group populations |amps[j]|^2, with
/// rows for step = 0..R.
[[nodiscard]] std::vector<std::vector<double>> group_run(GroupState& gs, std::uint64_t R);

/// Cross-check: runs the full statevector simulation (discretized mode) and
/// the 2M-dimensional group simulation on the same instance and returns the
/// maximum absolute per-group probability deviation over all steps 0..R.
/// Exact subspace invariance makes this rounding-level small.
[[nodiscard]] double compare_full_vs_group(const TspInstance& inst, int M, std::uint64_t R);

} // namespace qtsp
