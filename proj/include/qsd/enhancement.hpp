#pragma once

#include "qsd/noncontextual_bounds.hpp"
#include "qsd/quantum_optimal.hpp"

#include <utility>
#include <vector>

namespace qsd {

/// Non-strict enhancement criterion: gap >= -kEnhancedTol counts as enhanced,
/// so the regime where both models sit exactly at 1 - Q is enhanced.
inline constexpr double kEnhancedTol = 1e-10;

/// Per-axis resolution cap for sweep tables.
inline constexpr int kSweepResolutionCap = 2000;

struct GapProfile {
    double q_fail = 0.0;
    double quantum = 0.0;
    double nc_bound = 0.0;
    double gap = 0.0;  // quantum - nc_bound
    bool enhanced = false;
};

/// Closed-form quantum optimum vs pure-state noncontextual bound.
GapProfile gap(const DiscriminationInstance& inst, double Q);

/// Oracle quantum optimum vs noisy noncontextual bound; requires q1 = 0.5.
GapProfile gap(const NoisyInstance& inst, double Q, const SearchConfig& config = {});

/// Intervals of Q where enhancement fails (strict gap < -kEnhancedTol),
/// disjoint and sorted. analytic_upper_hint is the unambiguous-discrimination
/// threshold 2 sqrt(q1 q2 c).
struct RegionReport {
    std::vector<std::pair<double, double>> intervals;
    double analytic_upper_hint = 0.0;
};

/// Scans Q on a 1e-3 grid, bisects every boundary of the strict-gap region to
/// `tol`, and snaps a last-interval upper end within 2e-3 of the analytic
/// threshold onto it. tol must lie in [1e-12, 1e-3]; requires 0 < c < 1.
RegionReport non_enhancement_interval(const DiscriminationInstance& inst, double tol);

/// Inclusive linear range with `count` points (count = 1 pins lo).
struct Range {
    double lo = 0.0;
    double hi = 0.0;
    int count = 1;

    double at(int i) const { return count < 2 ? lo : lo + (hi - lo) * i / (count - 1); }
};

struct SweepRow {
    double q1 = 0.0;
    double c = 0.0;
    double eps = 0.0;  // meaningful only when has_eps
    bool has_eps = false;
    double q_fail = 0.0;
    double quantum = 0.0;
    double nc_bound = 0.0;
    double gap = 0.0;
    bool enhanced = false;
};

/// Pure-path sweep over (q1, Q) at fixed c; rows are q1-major then Q.
/// Throws std::invalid_argument if either axis exceeds kSweepResolutionCap.
std::vector<SweepRow> sweep(const Range& q1_range, const Range& q_range, double c);

struct MixedSweepResult {
    std::vector<SweepRow> rows;  // eps-major then Q
    std::vector<std::pair<double, RegionReport>> regions;  // per eps
    std::vector<std::pair<double, double>> interval_lengths;  // (eps, total length)
};

/// Mixed-path sweep at equal priors: oracle quantum optimum and noisy bound
/// over a Q grid per eps, with grid-resolution non-enhancement intervals.
MixedSweepResult mixed_sweep(double c, const Range& eps_range, const Range& q_range,
                             const SearchConfig& config = {});

}  // namespace qsd
