#include "qsd/enhancement.hpp"

#include <cmath>
#include <stdexcept>

namespace qsd {

namespace {

GapProfile make_profile(double Q, double quantum, double nc) {
    GapProfile g;
    g.q_fail = Q;
    g.quantum = quantum;
    g.nc_bound = nc;
    g.gap = quantum - nc;
    g.enhanced = g.gap >= -kEnhancedTol;
    return g;
}

void check_range(const Range& r, const char* name) {
    if (r.count < 1 || r.lo > r.hi) {
        throw std::invalid_argument(std::string(name) + " range is empty");
    }
    if (r.count > kSweepResolutionCap) {
        throw std::invalid_argument(std::string(name) + " range exceeds the resolution cap");
    }
}

/// Grid-resolution non-enhancement intervals from precomputed strict-gap
/// flags; endpoints at the midpoint of each transition cell.
std::vector<std::pair<double, double>> intervals_from_flags(const std::vector<double>& qs,
                                                            const std::vector<bool>& strictly_neg) {
    std::vector<std::pair<double, double>> out;
    const size_t n = qs.size();
    size_t i = 0;
    while (i < n) {
        if (!strictly_neg[i]) {
            ++i;
            continue;
        }
        const size_t start = i;
        while (i + 1 < n && strictly_neg[i + 1]) ++i;
        const double lo = start == 0 ? qs[0] : 0.5 * (qs[start - 1] + qs[start]);
        const double hi = i + 1 == n ? qs[n - 1] : 0.5 * (qs[i] + qs[i + 1]);
        out.emplace_back(lo, hi);
        ++i;
    }
    return out;
}

}  // namespace

GapProfile gap(const DiscriminationInstance& inst, double Q) {
    return make_profile(Q, quantum_success_closed(inst, Q).success, nc_bound_pure(inst, Q).value);
}

GapProfile gap(const NoisyInstance& inst, double Q, const SearchConfig& config) {
    return make_profile(Q, mixed_quantum_success(inst, Q, config).success,
                        nc_bound_noisy(inst, Q).value);
}

RegionReport non_enhancement_interval(const DiscriminationInstance& inst, double tol) {
    if (!(tol >= 1e-12 && tol <= 1e-3)) {
        throw std::domain_error("tol must lie in [1e-12, 1e-3]");
    }
    if (!(inst.c() > 0.0 && inst.c() < 1.0)) {
        throw std::domain_error("c must lie in (0,1)");
    }
    const auto strictly_neg = [&](double Q) { return gap(inst, Q).gap < -kEnhancedTol; };
    const double step = 1e-3;
    const int n = static_cast<int>(std::lround(1.0 / step));

    RegionReport report;
    report.analytic_upper_hint = ud_failure_threshold(inst);

    // Bisect the predicate boundary inside (lo, hi], where the predicate
    // differs between the ends.
    const auto bisect = [&](double lo, double hi, bool lo_flag) {
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            if (strictly_neg(mid) == lo_flag) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };

    bool prev = strictly_neg(0.0);
    double open_start = prev ? 0.0 : -1.0;
    double prev_q = 0.0;
    for (int i = 1; i <= n; ++i) {
        const double q = i == n ? 1.0 : i * step;
        const bool cur = strictly_neg(q);
        if (cur != prev) {
            const double boundary = bisect(prev_q, q, prev);
            if (cur) {
                open_start = boundary;
            } else {
                report.intervals.emplace_back(open_start, boundary);
                open_start = -1.0;
            }
        }
        prev = cur;
        prev_q = q;
    }
    if (open_start >= 0.0) {
        report.intervals.emplace_back(open_start, 1.0);
    }

    if (!report.intervals.empty()) {
        double& upper = report.intervals.back().second;
        if (std::abs(upper - report.analytic_upper_hint) <= 2e-3) {
            upper = report.analytic_upper_hint;
        }
    }
    return report;
}

std::vector<SweepRow> sweep(const Range& q1_range, const Range& q_range, double c) {
    check_range(q1_range, "q1");
    check_range(q_range, "Q");
    std::vector<SweepRow> rows;
    rows.reserve(static_cast<size_t>(q1_range.count) * q_range.count);
    for (int i = 0; i < q1_range.count; ++i) {
        const DiscriminationInstance inst(q1_range.at(i), c);
        for (int j = 0; j < q_range.count; ++j) {
            const double Q = q_range.at(j);
            const GapProfile g = gap(inst, Q);
            SweepRow row;
            row.q1 = inst.q1();
            row.c = c;
            row.has_eps = false;
            row.q_fail = Q;
            row.quantum = g.quantum;
            row.nc_bound = g.nc_bound;
            row.gap = g.gap;
            row.enhanced = g.enhanced;
            rows.push_back(row);
        }
    }
    return rows;
}

MixedSweepResult mixed_sweep(double c, const Range& eps_range, const Range& q_range,
                             const SearchConfig& config) {
    check_range(eps_range, "eps");
    check_range(q_range, "Q");
    MixedSweepResult result;
    result.rows.reserve(static_cast<size_t>(eps_range.count) * q_range.count);

    std::vector<double> qs(q_range.count);
    for (int j = 0; j < q_range.count; ++j) qs[j] = q_range.at(j);

    for (int i = 0; i < eps_range.count; ++i) {
        const double eps = eps_range.at(i);
        const NoisyInstance inst(DiscriminationInstance(0.5, c), eps);
        // One oracle evaluation per grid cell; the per-eps vector doubles as
        // the cache the region finder reads from.
        std::vector<bool> strictly_neg(qs.size());
        for (size_t j = 0; j < qs.size(); ++j) {
            const GapProfile g = gap(inst, qs[j], config);
            strictly_neg[j] = g.gap < -kEnhancedTol;
            SweepRow row;
            row.q1 = 0.5;
            row.c = c;
            row.eps = eps;
            row.has_eps = true;
            row.q_fail = qs[j];
            row.quantum = g.quantum;
            row.nc_bound = g.nc_bound;
            row.gap = g.gap;
            row.enhanced = g.enhanced;
            result.rows.push_back(row);
        }
        RegionReport report;
        report.analytic_upper_hint = ud_failure_threshold(inst.base());
        report.intervals = intervals_from_flags(qs, strictly_neg);
        double total = 0.0;
        for (const auto& [lo, hi] : report.intervals) total += hi - lo;
        result.regions.emplace_back(eps, std::move(report));
        result.interval_lengths.emplace_back(eps, total);
    }
    return result;
}

}  // namespace qsd
