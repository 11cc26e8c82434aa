#pragma once

#include "qsd/qubit_algebra.hpp"

#include <optional>

namespace qsd {

enum class NcRegime {
    CandidateMax,        // bound comes from the candidate-split maximum
    TrivialOneMinusQ,    // bound is 1 - Q
};

/// Identifies the winning candidate: state index x in {1,2} and its failure
/// rate z.
struct NcArgmax {
    int x = 1;
    double z = 0.0;
};

struct NcBoundResult {
    double value = 0.0;
    NcRegime regime = NcRegime::CandidateMax;
    std::optional<NcArgmax> argmax;
};

/// Per-state failure rates (Q1, Q2) with q1*Q1 + q2*Q2 = Q. Constructing from
/// Q1 derives Q2 from the constraint; both must land in [0,1] and reproduce Q
/// within 1e-12.
struct FailureSplit {
    double q1_fail = 0.0;
    double q2_fail = 0.0;
    static FailureSplit from_first(const DiscriminationInstance& inst, double Q, double q1_fail);
};

/// Failure rates (Q^psi, Q^perp) of the pure component and its orthogonal
/// complement under noise eps, with ((1+eps)/2) Q^psi + ((1-eps)/2) Q^perp = Q.
struct MixedSplit {
    double q_psi = 0.0;
    double q_psi_perp = 0.0;
    static MixedSplit from_psi(double eps, double Q, double q_psi);
};

/// Candidate value f_x(z) = Qbar - q_x (1-z) (q_o c - Q + q_x z)/(q_o - Q + q_x z)
/// with q_o the other prior. Throws std::domain_error if the denominator is
/// <= 1e-14 or z lies outside [0, min(Q/q_x, c)].
double nc_candidate_value(const DiscriminationInstance& inst, double Q, int x, double z);

/// Noncontextual upper bound for a pure-state pair at fixed failure Q:
/// max of the four candidates f_x(z), z in {0, Q/q_x}, when Q <= min(q1,q2)*c,
/// and 1 - Q otherwise. Ties break toward x = 1, then z = 0.
NcBoundResult nc_bound_pure(const DiscriminationInstance& inst, double Q);

/// Brute-force check of nc_bound_pure: dense scan of the raw split objective
/// 1-Q - min{q1(1-Q1), q2(1-Q2)} * max{(c-Q1)/(1-Q1), (c-Q2)/(1-Q2), 0}
/// over the feasible segment, plus the candidate function evaluated at the
/// analytic segment endpoints. grid_step must lie in [1e-7, 1e-2].
double nc_bound_grid_oracle(const DiscriminationInstance& inst, double Q, double grid_step);

enum class EqualPriorRegion {
    LowQ,   // 1 - c/2 - (1-c) Q
    MidQ,   // 1 - Q - (c-2Q)/(2(1-2Q))
    HighQ,  // 1 - Q
};

struct RegionalValue {
    double value = 0.0;
    EqualPriorRegion region = EqualPriorRegion::LowQ;
};

/// Equal-prior bound via the regional formulas; requires 0 < c < 1.
/// Region boundaries: LowQ/MidQ switch where the two candidate formulas cross
/// (Q = 1 - 1/(2c), empty for c <= 1/2), HighQ for Q > c/2.
RegionalValue nc_equal_prior_regional(double c, double Q);

/// Minimum-error (Q = 0) noncontextual bound, 1 - min(q1,q2) c.
double nc_minerr(const DiscriminationInstance& inst);

/// Zero-error limit of the noncontextual model: success max(q1,q2) c at
/// failure 1 - max(q1,q2) c.
struct UdLimit {
    double success = 0.0;
    double q_max = 0.0;
};
UdLimit nc_ud_limit(const DiscriminationInstance& inst);

/// Noncontextual bound for depolarized states under a balanced measurement at
/// equal priors. Three pieces with breakpoints Q = (1-eps)/2 and
/// Q = (1-eps+c(1+eps))/2. Throws std::invalid_argument if q1 != 0.5.
NcBoundResult nc_bound_noisy(const NoisyInstance& inst, double Q);

/// Brute-force check of nc_bound_noisy: maximizes the split objective over
/// the feasible (Q^psi, Q^perp) segment.
double nc_mixed_grid_oracle(const NoisyInstance& inst, double Q, double grid_step);

/// Success probability of the noncontextual model in the maximal-confidence
/// limit: (1 - (1-eps)/2 - eps c) / 2. Requires q1 = 0.5.
double nc_max_confidence_limit(const NoisyInstance& inst);

}  // namespace qsd
