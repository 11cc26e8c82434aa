#pragma once

#include "qsd/qubit_algebra.hpp"

#include <cstdint>

namespace qsd {

enum class QuantumRegime {
    InterpolatedFormula,  // Q below the unambiguous-discrimination threshold
    WasteRegime,          // success is 1 - Q, spent entirely on the inconclusive outcome
};

struct QuantumResult {
    double success = 0.0;
    QuantumRegime regime = QuantumRegime::InterpolatedFormula;
    double q_fail = 0.0;  // echo of the requested Q
};

/// Minimum failure probability of unambiguous discrimination: 2 sqrt(q1 q2 c).
double ud_failure_threshold(const DiscriminationInstance& inst);

/// Closed-form maximum success probability at fixed failure probability Q:
/// [Qbar + sqrt(Qbar^2 - (2 sqrt(q1 q2 c) - Q)^2)] / 2 below the threshold,
/// 1 - Q above it. Throws std::domain_error unless 0 <= Q <= 1.
QuantumResult quantum_success_closed(const DiscriminationInstance& inst, double Q);

/// Outer-search resolution for povm_oracle. The defaults reach ~1e-9
/// objective accuracy on smooth instances.
struct SearchConfig {
    int theta_points = 200;    // rotation-angle grid over [0, pi)
    int weight_points = 200;   // grid for the first M0 eigenvalue over [0, 1]
    int refine_rounds = 40;    // step-halving rounds of the pattern search
    double objective_tol = 1e-10;
};

struct PovmOracleResult {
    double success = 0.0;
    Povm3 povm;
    double achieved_q = 0.0;
    std::int64_t iterations = 0;  // objective evaluations
};

/// Numeric maximizer of the success probability over three-outcome POVMs with
/// Tr(rho_bar M0) = Q, rho_bar = q1 rho1 + q2 rho2. M0 is parameterized as
/// R(theta) diag(a,b) R(theta)^T with the failure constraint eliminating b;
/// for fixed M0 the best conclusive split is exact via the positive part of
/// sqrt(N) (q1 rho1 - q2 rho2) sqrt(N), N = I - M0. The outer 2-parameter
/// search is a coarse grid followed by a shrinking-step pattern search.
/// Ties within the grid resolve to the smallest theta, then the smallest a.
/// Requires both density operators real in the computational basis.
PovmOracleResult povm_oracle(const HermitianOp& rho1, const HermitianOp& rho2, double q1,
                             double Q, const SearchConfig& config = {});

/// Oracle-backed quantum optimum for a depolarized pair at equal priors.
/// Throws std::invalid_argument if inst.base().q1() != 0.5 (documented
/// restriction) and std::domain_error on Q. The regime is WasteRegime iff the
/// returned POVM's error probability is below 1e-8.
QuantumResult mixed_quantum_success(const NoisyInstance& inst, double Q,
                                    const SearchConfig& config = {});

}  // namespace qsd
